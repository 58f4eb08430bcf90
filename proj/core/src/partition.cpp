#include "freecum/partition.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace fc {

IntegerPartition::IntegerPartition(std::vector<int> parts) : parts_(std::move(parts)) {
  for (int p : parts_)
    if (p <= 0) throw DomainError("integer partition parts must be positive");
  std::sort(parts_.begin(), parts_.end(), std::greater<>());
  n_ = std::accumulate(parts_.begin(), parts_.end(), 0);
}

int IntegerPartition::multiplicity(int part) const {
  return static_cast<int>(std::count(parts_.begin(), parts_.end(), part));
}

std::string IntegerPartition::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) s += '+';
    s += std::to_string(parts_[i]);
  }
  return s;
}

IntegerPartition IntegerPartition::parse(std::string_view s) {
  std::vector<int> parts;
  std::string cur;
  auto flush = [&] {
    if (cur.empty()) return;
    try {
      parts.push_back(std::stoi(cur));
    } catch (const std::exception&) {
      throw DomainError("bad integer partition: " + std::string(s));
    }
    cur.clear();
  };
  for (char c : s) {
    if (c == '+' || c == ',' || c == ' ' || c == '[' || c == ']') {
      flush();
    } else if (c >= '0' && c <= '9') {
      cur.push_back(c);
    } else {
      throw DomainError("bad integer partition: " + std::string(s));
    }
  }
  flush();
  if (parts.empty()) throw DomainError("empty integer partition");
  return IntegerPartition(std::move(parts));
}

namespace {
void partitions_rec(int rest, int maxp, std::vector<int>& cur, std::vector<IntegerPartition>& out) {
  if (rest == 0) {
    out.emplace_back(cur);
    return;
  }
  for (int p = std::min(rest, maxp); p >= 1; --p) {
    cur.push_back(p);
    partitions_rec(rest - p, p, cur, out);
    cur.pop_back();
  }
}
}  // namespace

std::vector<IntegerPartition> integer_partitions(int n) {
  std::vector<IntegerPartition> out;
  std::vector<int> cur;
  if (n > 0) partitions_rec(n, n, cur, out);
  return out;
}

std::vector<IntegerPartition> integer_partitions_upto(int max_n, int max_length) {
  std::vector<IntegerPartition> out;
  for (int n = 1; n <= max_n; ++n)
    for (auto& l : integer_partitions(n))
      if (l.length() <= max_length) out.push_back(std::move(l));
  return out;
}

SetPartition SetPartition::finest(int n) {
  std::vector<int> labels(n);
  std::iota(labels.begin(), labels.end(), 0);
  return from_labels(labels);
}

SetPartition SetPartition::coarsest(int n) { return from_labels(std::vector<int>(n, 0)); }

SetPartition SetPartition::from_labels(const std::vector<int>& labels) {
  if (labels.size() > static_cast<std::size_t>(kMaxN)) throw GuardError("set partition ground set too large");
  SetPartition p;
  p.rgs_.resize(labels.size());
  std::vector<int> seen;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto it = std::find(seen.begin(), seen.end(), labels[i]);
    if (it == seen.end()) {
      seen.push_back(labels[i]);
      p.rgs_[i] = static_cast<std::uint8_t>(seen.size() - 1);
    } else {
      p.rgs_[i] = static_cast<std::uint8_t>(it - seen.begin());
    }
  }
  p.nblocks_ = static_cast<int>(seen.size());
  return p;
}

SetPartition SetPartition::from_blocks(int n, const std::vector<std::vector<int>>& blocks) {
  std::vector<int> labels(n, -1);
  for (std::size_t b = 0; b < blocks.size(); ++b)
    for (int i : blocks[b]) {
      if (i < 0 || i >= n || labels[i] != -1) throw DomainError("blocks do not partition the ground set");
      labels[i] = static_cast<int>(b);
    }
  for (int l : labels)
    if (l == -1) throw DomainError("blocks do not cover the ground set");
  return from_labels(labels);
}

SetPartition SetPartition::from_masks(int n, const std::vector<std::uint32_t>& masks) {
  std::vector<std::vector<int>> blocks;
  for (auto m : masks) {
    std::vector<int> b;
    for (int i = 0; i < n; ++i)
      if (m >> i & 1u) b.push_back(i);
    blocks.push_back(std::move(b));
  }
  return from_blocks(n, blocks);
}

SetPartition SetPartition::parse(std::string_view s) {
  std::vector<std::vector<int>> blocks(1);
  std::string cur;
  int n = 0;
  auto flush = [&] {
    if (cur.empty()) return;
    int v = std::stoi(cur);
    if (v <= 0) throw DomainError("set partition elements are 1-based");
    blocks.back().push_back(v - 1);
    n = std::max(n, v);
    cur.clear();
  };
  for (char c : s) {
    if (c >= '0' && c <= '9') {
      cur.push_back(c);
    } else if (c == ',' || c == ' ') {
      flush();
    } else if (c == '|') {
      flush();
      blocks.emplace_back();
    } else if (c == '{' || c == '}') {
      flush();
    } else {
      throw DomainError("bad set partition: " + std::string(s));
    }
  }
  flush();
  std::erase_if(blocks, [](const auto& b) { return b.empty(); });
  return from_blocks(n, blocks);
}

std::vector<std::vector<int>> SetPartition::blocks() const {
  std::vector<std::vector<int>> out(nblocks_);
  for (int i = 0; i < size(); ++i) out[rgs_[i]].push_back(i);
  return out;
}

std::vector<std::uint32_t> SetPartition::block_masks() const {
  std::vector<std::uint32_t> out(nblocks_, 0);
  for (int i = 0; i < size(); ++i) out[rgs_[i]] |= 1u << i;
  return out;
}

bool SetPartition::leq(const SetPartition& o) const {
  if (o.size() != size()) throw DomainError("set partitions on different ground sets");
  std::uint8_t img[kMaxN];
  std::fill(img, img + kMaxN, 0xff);
  for (int i = 0; i < size(); ++i) {
    auto& t = img[rgs_[i]];
    if (t == 0xff)
      t = o.rgs_[i];
    else if (t != o.rgs_[i])
      return false;
  }
  return true;
}

SetPartition SetPartition::join(const SetPartition& o) const {
  if (o.size() != size()) throw DomainError("set partitions on different ground sets");
  int n = size();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int first_a[kMaxN], first_b[kMaxN];
  std::fill(first_a, first_a + kMaxN, -1);
  std::fill(first_b, first_b + kMaxN, -1);
  for (int i = 0; i < n; ++i) {
    int& fa = first_a[rgs_[i]];
    if (fa < 0) fa = i; else parent[find(i)] = find(fa);
    int& fb = first_b[o.rgs_[i]];
    if (fb < 0) fb = i; else parent[find(i)] = find(fb);
  }
  std::vector<int> labels(n);
  for (int i = 0; i < n; ++i) labels[i] = find(i);
  return from_labels(labels);
}

SetPartition SetPartition::meet(const SetPartition& o) const {
  if (o.size() != size()) throw DomainError("set partitions on different ground sets");
  std::vector<int> labels(size());
  for (int i = 0; i < size(); ++i) labels[i] = rgs_[i] * kMaxN + o.rgs_[i];
  return from_labels(labels);
}

std::string SetPartition::to_string() const {
  std::string s = "{";
  auto bs = blocks();
  for (std::size_t b = 0; b < bs.size(); ++b) {
    if (b) s += '|';
    for (std::size_t k = 0; k < bs[b].size(); ++k) {
      if (k) s += ',';
      s += std::to_string(bs[b][k] + 1);
    }
  }
  return s + "}";
}

std::size_t SetPartition::hash() const {
  std::size_t h = 1469598103934665603ull;
  for (auto c : rgs_) h = (h ^ c) * 1099511628211ull;
  return h ^ rgs_.size();
}

Integer mobius(const SetPartition& a, const SetPartition& b) {
  if (!a.leq(b)) throw DomainError("mobius requires a refinement pair");
  std::vector<int> count(b.num_blocks(), 0);
  std::vector<bool> seen(a.num_blocks(), false);
  for (int i = 0; i < a.size(); ++i)
    if (!seen[a.block_of(i)]) {
      seen[a.block_of(i)] = true;
      ++count[b.block_of(i)];
    }
  Integer m = 1;
  for (int k : count) {
    m *= factorial(k - 1);
    if ((k - 1) % 2) m = -m;
  }
  return m;
}

int excess_L(const SetPartition& pt, const SetPartition& pb, const SetPartition& base) {
  if (!base.leq(pt) || !base.leq(pb)) throw DomainError("excess_L requires both partitions above the base");
  return base.num_blocks() - pt.num_blocks() - pb.num_blocks() + pt.join(pb).num_blocks();
}

namespace {
void rgs_rec(int i, int k, int maxb, std::vector<int>& lab, const std::function<void(const std::vector<int>&)>& f) {
  if (i == k) {
    f(lab);
    return;
  }
  for (int b = 0; b <= maxb + 1; ++b) {
    lab[i] = b;
    rgs_rec(i + 1, k, std::max(maxb, b), lab, f);
  }
}
}  // namespace

void for_each_set_partition(int n, const std::function<void(const SetPartition&)>& f, const SetPartition* floor) {
  if (n > kMaxSetPartitionN) throw GuardError("set partition enumeration limited to n <= 12");
  if (n < 0) throw DomainError("negative ground set");
  if (floor && floor->size() != n) throw DomainError("floor partition has the wrong size");
  int k = floor ? floor->num_blocks() : n;
  std::vector<int> lab(k);
  if (k == 0) {
    f(SetPartition::from_labels({}));
    return;
  }
  std::vector<int> labels(n);
  rgs_rec(0, k, -1, lab, [&](const std::vector<int>& l) {
    if (floor) {
      for (int i = 0; i < n; ++i) labels[i] = l[floor->block_of(i)];
      f(SetPartition::from_labels(labels));
    } else {
      f(SetPartition::from_labels(l));
    }
  });
}

std::vector<SetPartition> enumerate_set_partitions(int n, const std::optional<SetPartition>& floor) {
  std::vector<SetPartition> out;
  for_each_set_partition(n, [&](const SetPartition& p) { out.push_back(p); }, floor ? &*floor : nullptr);
  return out;
}

}  // namespace fc
