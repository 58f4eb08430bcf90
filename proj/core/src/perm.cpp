#include "freecum/perm.hpp"

#include <algorithm>
#include <numeric>

namespace fc {

Permutation::Permutation(int n) {
  if (n < 0 || n > kMaxN) throw GuardError("permutation size out of range");
  img_.resize(n);
  std::iota(img_.begin(), img_.end(), 0);
}

Permutation Permutation::from_images(const std::vector<int>& image) {
  int n = static_cast<int>(image.size());
  Permutation p(n);
  std::vector<bool> hit(n, false);
  for (int i = 0; i < n; ++i) {
    if (image[i] < 0 || image[i] >= n || hit[image[i]]) throw DomainError("image is not a bijection");
    hit[image[i]] = true;
    p.img_[i] = static_cast<std::uint8_t>(image[i]);
  }
  return p;
}

Permutation Permutation::from_cycles(int n, const std::vector<std::vector<int>>& cycles) {
  std::vector<int> image(n);
  std::iota(image.begin(), image.end(), 0);
  std::vector<bool> used(n, false);
  for (const auto& c : cycles) {
    for (std::size_t k = 0; k < c.size(); ++k) {
      int a = c[k];
      if (a < 0 || a >= n || used[a]) throw DomainError("cycles are not disjoint or out of range");
      used[a] = true;
      image[a] = c[(k + 1) % c.size()];
    }
  }
  return from_images(image);
}

Permutation Permutation::parse(std::string_view s, int n) {
  std::vector<std::vector<int>> cycles;
  std::string cur;
  bool open = false;
  int maxv = 0;
  auto flush = [&] {
    if (cur.empty()) return;
    int v = std::stoi(cur);
    if (v <= 0) throw DomainError("permutation labels are 1-based");
    cycles.back().push_back(v - 1);
    maxv = std::max(maxv, v);
    cur.clear();
  };
  for (char c : s) {
    if (c == '(') {
      if (open) throw DomainError("nested parenthesis in cycle notation");
      open = true;
      cycles.emplace_back();
    } else if (c == ')') {
      if (!open) throw DomainError("unbalanced parenthesis in cycle notation");
      flush();
      open = false;
    } else if (c >= '0' && c <= '9') {
      if (!open) throw DomainError("label outside a cycle");
      cur.push_back(c);
    } else if (c == ' ' || c == ',') {
      flush();
    } else {
      throw DomainError("bad cycle notation: " + std::string(s));
    }
  }
  if (open) throw DomainError("unterminated cycle");
  if (n == 0) n = maxv;
  if (maxv > n) throw DomainError("label exceeds the ground set");
  return from_cycles(n, cycles);
}

Permutation Permutation::transposition(int n, int a, int b) {
  Permutation p(n);
  std::swap(p.img_[a], p.img_[b]);
  return p;
}

Permutation Permutation::operator*(const Permutation& t) const {
  if (t.size() != size()) throw DomainError("composing permutations of different sizes");
  Permutation r;
  r.img_.resize(img_.size());
  for (std::size_t i = 0; i < img_.size(); ++i) r.img_[i] = img_[t.img_[i]];
  return r;
}

Permutation Permutation::inverse() const {
  Permutation r;
  r.img_.resize(img_.size());
  for (std::size_t i = 0; i < img_.size(); ++i) r.img_[img_[i]] = static_cast<std::uint8_t>(i);
  return r;
}

std::vector<std::vector<int>> Permutation::cycles() const {
  std::vector<std::vector<int>> out;
  std::uint32_t seen = 0;
  for (int i = 0; i < size(); ++i) {
    if (seen >> i & 1u) continue;
    std::vector<int> c;
    for (int j = i; !(seen >> j & 1u); j = img_[j]) {
      seen |= 1u << j;
      c.push_back(j);
    }
    out.push_back(std::move(c));
  }
  return out;
}

int Permutation::num_cycles() const {
  int k = 0;
  std::uint32_t seen = 0;
  for (int i = 0; i < size(); ++i) {
    if (seen >> i & 1u) continue;
    ++k;
    for (int j = i; !(seen >> j & 1u); j = img_[j]) seen |= 1u << j;
  }
  return k;
}

IntegerPartition Permutation::cycle_type() const {
  std::vector<int> parts;
  for (const auto& c : cycles()) parts.push_back(static_cast<int>(c.size()));
  return IntegerPartition(std::move(parts));
}

bool Permutation::is_identity() const {
  for (int i = 0; i < size(); ++i)
    if (img_[i] != i) return false;
  return true;
}

std::vector<int> Permutation::cycle_of(int i) const {
  std::vector<int> c{i};
  for (int j = img_[i]; j != i; j = img_[j]) c.push_back(j);
  return c;
}

std::string Permutation::to_string() const {
  std::string s;
  for (const auto& c : cycles()) {
    s += '(';
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (k) s += ' ';
      s += std::to_string(c[k] + 1);
    }
    s += ')';
  }
  return s;
}

std::size_t Permutation::hash() const {
  std::size_t h = 1469598103934665603ull;
  for (auto c : img_) h = (h ^ c) * 1099511628211ull;
  return h;
}

Permutation gamma_of_profile(const std::vector<int>& profile) {
  int n = std::accumulate(profile.begin(), profile.end(), 0);
  std::vector<int> image(n);
  int start = 0;
  for (int len : profile) {
    if (len <= 0) throw DomainError("cycle lengths must be positive");
    for (int k = 0; k < len; ++k) image[start + k] = start + (k + 1) % len;
    start += len;
  }
  return Permutation::from_images(image);
}

Permutation gamma_of(const IntegerPartition& lambda) {
  if (lambda.empty()) throw DomainError("gamma_of needs a nonempty partition");
  return gamma_of_profile(lambda.parts());
}

SetPartition orbit_partition(const Permutation& s) {
  std::vector<int> labels(s.size(), -1);
  int b = 0;
  for (const auto& c : s.cycles()) {
    for (int i : c) labels[i] = b;
    ++b;
  }
  return SetPartition::from_labels(labels);
}

Permutation restrict(const Permutation& s, const std::vector<int>& subset) {
  std::vector<int> sorted = subset;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> pos(s.size(), -1);
  for (std::size_t k = 0; k < sorted.size(); ++k) pos[sorted[k]] = static_cast<int>(k);
  std::vector<int> image(sorted.size());
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    int t = pos[s(sorted[k])];
    if (t < 0) throw DomainError("restriction subset splits a cycle");
    image[k] = t;
  }
  return Permutation::from_images(image);
}

Permutation restrict_mask(const Permutation& s, std::uint32_t mask) {
  std::vector<int> subset;
  for (int i = 0; i < s.size(); ++i)
    if (mask >> i & 1u) subset.push_back(i);
  return restrict(s, subset);
}

void for_each_permutation(int n, const std::function<void(const Permutation&)>& f) {
  if (n > kMaxSymmetricN) throw GuardError("symmetric group enumeration limited to n <= 10");
  std::vector<int> image(n);
  std::iota(image.begin(), image.end(), 0);
  do {
    f(Permutation::from_images(image));
  } while (std::next_permutation(image.begin(), image.end()));
}

namespace {
void class_rec(std::vector<int>& image, std::uint32_t used, int n, std::vector<int>& lengths,
               const std::function<void(const Permutation&)>& f) {
  if (lengths.empty()) {
    f(Permutation::from_images(image));
    return;
  }
  int first = 0;
  while (used >> first & 1u) ++first;
  // pick the length of the cycle through the smallest free point, each distinct value once
  for (std::size_t li = 0; li < lengths.size(); ++li) {
    if (li > 0 && lengths[li] == lengths[li - 1]) continue;
    int len = lengths[li];
    std::vector<int> rest_lengths = lengths;
    rest_lengths.erase(rest_lengths.begin() + static_cast<long>(li));
    std::vector<int> cyc{first};
    std::function<void(std::uint32_t)> grow = [&](std::uint32_t u) {
      if (static_cast<int>(cyc.size()) == len) {
        for (int k = 0; k < len; ++k) image[cyc[k]] = cyc[(k + 1) % len];
        class_rec(image, u, n, rest_lengths, f);
        return;
      }
      for (int j = 0; j < n; ++j) {
        if (u >> j & 1u) continue;
        cyc.push_back(j);
        grow(u | 1u << j);
        cyc.pop_back();
      }
    };
    grow(used | 1u << first);
  }
}
}  // namespace

void for_each_in_class(const IntegerPartition& lambda, const std::function<void(const Permutation&)>& f) {
  int n = lambda.size();
  if (n > 12) throw GuardError("conjugacy class enumeration limited to n <= 12");
  std::vector<int> image(n);
  std::vector<int> lengths = lambda.parts();
  class_rec(image, 0, n, lengths, f);
}

std::vector<Permutation> conjugacy_class(const IntegerPartition& lambda) {
  std::vector<Permutation> out;
  for_each_in_class(lambda, [&](const Permutation& p) { out.push_back(p); });
  return out;
}

}  // namespace fc
