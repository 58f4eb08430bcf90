#include "freecum/kappa.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <random>
#include <mutex>
#include <shared_mutex>

namespace fc {

namespace {
struct Registry {
  std::shared_mutex m;
  std::deque<std::vector<int>> index;
  std::map<std::vector<int>, KappaId> ids;
};
Registry& registry() {
  static Registry r;
  return r;
}
}  // namespace

KappaId kappa_id(std::vector<int> index) {
  if (index.empty()) throw DomainError("cumulant index must be nonempty");
  for (int a : index)
    if (a <= 0) throw DomainError("cumulant indices must be positive");
  std::sort(index.begin(), index.end(), std::greater<>());
  auto& r = registry();
  {
    std::shared_lock lock(r.m);
    auto it = r.ids.find(index);
    if (it != r.ids.end()) return it->second;
  }
  std::unique_lock lock(r.m);
  auto it = r.ids.find(index);
  if (it != r.ids.end()) return it->second;
  if (r.index.size() >= 0xffff) throw GuardError("too many cumulant indeterminates");
  auto id = static_cast<KappaId>(r.index.size());
  r.index.push_back(index);
  r.ids.emplace(std::move(index), id);
  return id;
}

const std::vector<int>& kappa_index(KappaId id) {
  auto& r = registry();
  std::shared_lock lock(r.m);
  return r.index.at(id);
}

int kappa_order(KappaId id) { return static_cast<int>(kappa_index(id).size()); }

std::string kappa_name(KappaId id) {
  std::string s = "k[";
  const auto& idx = kappa_index(id);
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(idx[i]);
  }
  return s + "]";
}

bool kappa_less(KappaId a, KappaId b) {
  const auto& x = kappa_index(a);
  const auto& y = kappa_index(b);
  if (x.size() != y.size()) return x.size() > y.size();
  return x > y;
}

KappaPoly::KappaPoly(const Rational& c) {
  if (c != 0) terms_.emplace_back(Monomial{}, c);
}

KappaPoly KappaPoly::kappa(const std::vector<int>& index) { return from_id(kappa_id(index)); }

KappaPoly KappaPoly::from_id(KappaId id) {
  KappaPoly p;
  p.terms_.emplace_back(Monomial{id}, Rational(1));
  return p;
}

bool KappaPoly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.empty()); }

Rational KappaPoly::constant_term() const {
  if (!terms_.empty() && terms_[0].first.empty()) return terms_[0].second;
  return 0;
}

void KappaPoly::normalize() {
  std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
  std::size_t w = 0;
  for (std::size_t r = 0; r < terms_.size(); ++r) {
    if (w > 0 && terms_[w - 1].first == terms_[r].first) {
      terms_[w - 1].second += terms_[r].second;
    } else {
      if (w != r) terms_[w] = std::move(terms_[r]);
      ++w;
    }
  }
  terms_.resize(w);
  std::erase_if(terms_, [](const Term& t) { return t.second == 0; });
}

namespace {
template <class Op>
std::vector<KappaPoly::Term> merge_terms(const std::vector<KappaPoly::Term>& a, const std::vector<KappaPoly::Term>& b, Op op) {
  std::vector<KappaPoly::Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, op(Rational(0), b[j].second));
      ++j;
    } else {
      Rational c = op(a[i].second, b[j].second);
      if (c != 0) out.emplace_back(a[i].first, std::move(c));
      ++i;
      ++j;
    }
  }
  return out;
}

Monomial merge_monomials(const Monomial& a, const Monomial& b) {
  Monomial m;
  m.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(m));
  return m;
}
}  // namespace

KappaPoly KappaPoly::operator+(const KappaPoly& o) const {
  KappaPoly r;
  r.terms_ = merge_terms(terms_, o.terms_, [](const Rational& x, const Rational& y) { return Rational(x + y); });
  return r;
}

KappaPoly KappaPoly::operator-(const KappaPoly& o) const {
  KappaPoly r;
  r.terms_ = merge_terms(terms_, o.terms_, [](const Rational& x, const Rational& y) { return Rational(x - y); });
  return r;
}

KappaPoly KappaPoly::operator-() const {
  KappaPoly r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

KappaPoly KappaPoly::operator*(const KappaPoly& o) const {
  KappaPoly r;
  if (terms_.empty() || o.terms_.empty()) return r;
  if (o.is_constant()) return scaled(o.terms_[0].second);
  if (is_constant()) return o.scaled(terms_[0].second);
  r.terms_.reserve(terms_.size() * o.terms_.size());
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) r.terms_.emplace_back(merge_monomials(ma, mb), ca * cb);
  r.normalize();
  return r;
}

KappaPoly KappaPoly::from_terms(std::vector<Term> raw) {
  KappaPoly r;
  r.terms_ = std::move(raw);
  r.normalize();
  return r;
}

void KappaPoly::append_into(const KappaPoly& a, const Rational& scale, std::vector<Term>& out) {
  for (const auto& [m, c] : a.terms_) out.emplace_back(m, c * scale);
}

void KappaPoly::multiply_into(const KappaPoly& a, const KappaPoly& b, const Rational& scale, std::vector<Term>& out) {
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) out.emplace_back(merge_monomials(ma, mb), ca * cb * scale);
}

KappaPoly& KappaPoly::operator+=(const KappaPoly& o) { return *this = *this + o; }
KappaPoly& KappaPoly::operator-=(const KappaPoly& o) { return *this = *this - o; }
KappaPoly& KappaPoly::operator*=(const KappaPoly& o) { return *this = *this * o; }

KappaPoly KappaPoly::scaled(const Rational& c) const {
  KappaPoly r;
  if (c == 0) return r;
  r.terms_ = terms_;
  for (auto& t : r.terms_) t.second *= c;
  return r;
}

KappaPoly KappaPoly::divided(const KappaPoly& c) const {
  if (!c.is_constant() || c.is_zero()) throw DomainError("division by a non-constant or zero cumulant polynomial");
  return scaled(Rational(1) / c.constant_term());
}

KappaPoly KappaPoly::derivative(KappaId id) const {
  KappaPoly r;
  for (const auto& [m, c] : terms_) {
    auto lo = std::lower_bound(m.begin(), m.end(), id);
    auto hi = std::upper_bound(m.begin(), m.end(), id);
    long e = hi - lo;
    if (e == 0) continue;
    Monomial m2(m.begin(), lo);
    m2.insert(m2.end(), lo + 1, m.end());
    r.terms_.emplace_back(std::move(m2), c * e);
  }
  r.normalize();
  return r;
}

std::vector<KappaId> KappaPoly::first_order_ids() const {
  std::vector<KappaId> ids;
  for (const auto& [m, c] : terms_)
    for (auto id : m)
      if (kappa_order(id) == 1) ids.push_back(id);
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

Rational KappaPoly::evaluate(const std::function<Rational(KappaId)>& value) const {
  Rational total = 0;
  std::map<KappaId, Rational> cache;
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (auto id : m) {
      auto it = cache.find(id);
      if (it == cache.end()) it = cache.emplace(id, value(id)).first;
      t *= it->second;
    }
    total += t;
  }
  return total;
}

KappaPoly KappaPoly::filtered(const std::function<bool(const Monomial&)>& pred) const {
  KappaPoly r;
  for (const auto& t : terms_)
    if (pred(t.first)) r.terms_.push_back(t);
  return r;
}

std::string KappaPoly::to_string() const {
  if (terms_.empty()) return "0";
  struct Printed {
    std::vector<std::vector<int>> key;
    std::string body;
    Rational c;
  };
  std::vector<Printed> rows;
  for (const auto& [m, c] : terms_) {
    Monomial sorted = m;
    std::sort(sorted.begin(), sorted.end(), kappa_less);
    Printed p;
    p.c = c;
    for (std::size_t i = 0; i < sorted.size();) {
      std::size_t j = i;
      while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
      if (!p.body.empty()) p.body += '*';
      p.body += kappa_name(sorted[i]);
      if (j - i > 1) p.body += '^' + std::to_string(j - i);
      for (std::size_t r = i; r < j; ++r) p.key.push_back(kappa_index(sorted[i]));
      i = j;
    }
    rows.push_back(std::move(p));
  }
  // higher-order indeterminates first, then decreasing indices
  auto key_less = [](const Printed& a, const Printed& b) {
    auto ka = a.key, kb = b.key;
    auto cmp = [](const std::vector<int>& x, const std::vector<int>& y) {
      if (x.size() != y.size()) return x.size() > y.size();
      return x > y;
    };
    return std::lexicographical_compare(ka.begin(), ka.end(), kb.begin(), kb.end(), cmp) ||
           (!std::lexicographical_compare(kb.begin(), kb.end(), ka.begin(), ka.end(), cmp) && ka.size() < kb.size());
  };
  std::sort(rows.begin(), rows.end(), key_less);
  std::string s;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    Rational c = rows[i].c;
    bool neg = c < 0;
    if (neg) c = -c;
    if (i == 0)
      s += neg ? "-" : "";
    else
      s += neg ? " - " : " + ";
    if (rows[i].body.empty()) {
      s += c.get_str();
    } else {
      if (c != 1) s += c.get_str() + "*";
      s += rows[i].body;
    }
  }
  return s;
}

KappaPoly KappaPoly::parse(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (ch != ' ' && ch != '\t' && ch != '\n') s.push_back(ch);
  if (s.empty()) throw DomainError("empty cumulant polynomial");
  KappaPoly result;
  std::size_t pos = 0;
  while (pos < s.size()) {
    int sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    }
    std::size_t end = pos;
    int depth = 0;
    while (end < s.size() && (depth > 0 || (s[end] != '+' && s[end] != '-'))) {
      if (s[end] == '[') ++depth;
      if (s[end] == ']') --depth;
      ++end;
    }
    std::string term = s.substr(pos, end - pos);
    if (term.empty()) throw DomainError("bad cumulant polynomial: " + std::string(text));
    KappaPoly t{Rational(sign)};
    std::size_t p = 0;
    while (p < term.size()) {
      std::size_t q = p;
      int d = 0;
      while (q < term.size() && (d > 0 || term[q] != '*')) {
        if (term[q] == '[') ++d;
        if (term[q] == ']') --d;
        ++q;
      }
      std::string f = term.substr(p, q - p);
      if (f.empty()) throw DomainError("bad factor in: " + term);
      if (f[0] == 'k' || f[0] == 'K') {
        auto lb = f.find('['), rb = f.find(']');
        if (lb == std::string::npos || rb == std::string::npos || rb < lb) throw DomainError("bad cumulant symbol: " + f);
        std::vector<int> idx;
        std::string num;
        for (std::size_t k = lb + 1; k <= rb; ++k) {
          if (k == rb || f[k] == ',') {
            if (num.empty()) throw DomainError("bad cumulant symbol: " + f);
            idx.push_back(std::stoi(num));
            num.clear();
          } else if (f[k] >= '0' && f[k] <= '9') {
            num.push_back(f[k]);
          } else {
            throw DomainError("bad cumulant symbol: " + f);
          }
        }
        int e = 1;
        if (rb + 1 < f.size()) {
          if (f[rb + 1] != '^') throw DomainError("bad exponent: " + f);
          e = std::stoi(f.substr(rb + 2));
        }
        auto kp = kappa(idx);
        for (int r = 0; r < e; ++r) t *= kp;
      } else {
        t = t.scaled(parse_rational(f));
      }
      p = q + 1;
    }
    result += t;
    pos = end;
  }
  return result;
}

KappaPoly D_operator(const std::vector<KappaPoly>& args) {
  if (args.empty()) throw DomainError("D needs at least one argument");
  std::vector<std::vector<std::pair<KappaId, KappaPoly>>> parts(args.size());
  for (std::size_t i = 0; i < args.size(); ++i)
    for (auto id : args[i].first_order_ids()) parts[i].emplace_back(id, args[i].derivative(id));
  KappaPoly total;
  std::vector<int> idx(args.size());
  std::function<void(std::size_t, const KappaPoly&)> rec = [&](std::size_t i, const KappaPoly& acc) {
    if (i == args.size()) {
      total += acc * KappaPoly::kappa(idx);
      return;
    }
    for (const auto& [id, d] : parts[i]) {
      idx[i] = kappa_index(id)[0];
      rec(i + 1, acc * d);
    }
  };
  rec(0, KappaPoly(1));
  return total;
}

Rational specialization_value(KappaId id, std::uint64_t seed) {
  const auto& idx = kappa_index(id);
  std::uint64_t h = seed * 0x9e3779b97f4a7c15ull + 0x632be59bd9b4e019ull;
  for (int a : idx) h = (h ^ static_cast<std::uint64_t>(a)) * 0x100000001b3ull + idx.size();
  std::mt19937_64 rng(h);
  long num = static_cast<long>(rng() % 19) - 9;
  if (num == 0) num = 10;
  long den = static_cast<long>(rng() % 7) + 1;
  Rational q(num, den);
  q.canonicalize();
  return q;
}

bool is_zero(const KappaPoly& p) { return p.is_zero(); }
bool is_zero(const Rational& q) { return q == 0; }

}  // namespace fc
