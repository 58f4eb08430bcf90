#include "freecum/series.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <unordered_map>

namespace fc {

ExpKey make_key(const std::vector<int>& exps) {
  if (exps.size() > static_cast<std::size_t>(kMaxVars)) throw DomainError("too many series variables");
  ExpKey k = 0;
  for (std::size_t i = 0; i < exps.size(); ++i) {
    if (exps[i] < 0 || exps[i] > 255) throw DomainError("series exponent out of range");
    k |= static_cast<ExpKey>(exps[i]) << (8 * i);
  }
  return k;
}

std::vector<int> key_exps(ExpKey k, int nvars) {
  std::vector<int> e(nvars);
  for (int i = 0; i < nvars; ++i) e[i] = key_exp(k, i);
  return e;
}

namespace {

bool term_less(ExpKey a, ExpKey b) {
  int da = key_degree(a), db = key_degree(b);
  return da != db ? da < db : a < b;
}

ExpKey clear_var(ExpKey k, int i) { return k & ~(ExpKey{0xff} << (8 * i)); }
ExpKey with_var(ExpKey k, int i, int e) { return clear_var(k, i) | (static_cast<ExpKey>(e) << (8 * i)); }

Rational scale_of(const Rational& a, const Rational& s) { return a * s; }
KappaPoly scale_of(const KappaPoly& a, const Rational& s) { return a.scaled(s); }

Rational inverse_of(const Rational& c) {
  if (c == 0) throw DomainError("series is not a unit");
  return Rational(1) / c;
}
Rational inverse_of(const KappaPoly& c) {
  if (!c.is_constant() || c.is_zero()) throw DomainError("series is not a unit");
  return Rational(1) / c.constant_term();
}

template <class R>
struct Acc;

template <>
struct Acc<Rational> {
  std::unordered_map<ExpKey, Rational> m;
  void add_product(ExpKey k, const Rational& a, const Rational& b) { m[k] += a * b; }
  void add(ExpKey k, const Rational& a) { m[k] += a; }
  std::vector<Series<Rational>::Term> finish() {
    std::vector<Series<Rational>::Term> out;
    out.reserve(m.size());
    for (auto& [k, v] : m)
      if (v != 0) out.push_back({k, std::move(v)});
    return out;
  }
};

template <>
struct Acc<KappaPoly> {
  std::unordered_map<ExpKey, std::vector<KappaPoly::Term>> m;
  void add_product(ExpKey k, const KappaPoly& a, const KappaPoly& b) { KappaPoly::multiply_into(a, b, Rational(1), m[k]); }
  void add(ExpKey k, const KappaPoly& a) { KappaPoly::append_into(a, Rational(1), m[k]); }
  std::vector<Series<KappaPoly>::Term> finish() {
    std::vector<Series<KappaPoly>::Term> out;
    out.reserve(m.size());
    for (auto& [k, v] : m) {
      KappaPoly p = KappaPoly::from_terms(std::move(v));
      if (!p.is_zero()) out.push_back({k, std::move(p)});
    }
    return out;
  }
};

std::string rational_factor(const Rational& q) {
  std::string s = to_string(q);
  if (s.find('/') != std::string::npos) return "(" + s + ")";
  return s;
}

std::string y_monomial(ExpKey k, int nvars, const std::string& symbol) {
  std::string s;
  for (int i = 0; i < nvars; ++i) {
    int e = key_exp(k, i);
    if (e == 0) continue;
    if (!s.empty()) s += '*';
    s += symbol + std::to_string(i + 1);
    if (e > 1) s += "^" + std::to_string(e);
  }
  return s;
}

// Appends "c*rest" with its sign to out.
void append_signed(std::string& out, Rational c, const std::string& rest) {
  bool neg = c < 0;
  if (neg) c = -c;
  if (out.empty()) {
    if (neg) out += "-";
  } else {
    out += neg ? " - " : " + ";
  }
  if (rest.empty()) {
    out += rational_factor(c);
  } else if (c == 1) {
    out += rest;
  } else {
    out += rational_factor(c) + "*" + rest;
  }
}

void append_coef(std::string& out, const Rational& c, const std::string& y) { append_signed(out, c, y); }

void append_coef(std::string& out, const KappaPoly& c, const std::string& y) {
  for (const auto& [m, q] : c.terms()) {
    std::string km = KappaPoly::from_terms({{m, Rational(1)}}).to_string();
    if (m.empty()) km.clear();
    std::string rest = km;
    if (!y.empty()) rest = rest.empty() ? y : rest + "*" + y;
    append_signed(out, q, rest);
  }
}

}  // namespace

template <class R>
Series<R>::Series(int nvars, int prec) : nvars_(nvars), prec_(prec) {
  if (nvars < 1 || nvars > kMaxVars) throw DomainError("series variable count out of range");
}

template <class R>
Series<R> Series<R>::constant(int nvars, const R& c, int prec) {
  Series s(nvars, prec);
  if (!fc::is_zero(c) && prec >= 0) s.terms_.push_back({0, c});
  return s;
}

template <class R>
Series<R> Series<R>::monomial(int nvars, const std::vector<int>& exps, const R& c, int prec) {
  if (static_cast<int>(exps.size()) != nvars) throw DomainError("exponent vector length mismatch");
  Series s(nvars, prec);
  ExpKey k = make_key(exps);
  if (!fc::is_zero(c) && key_degree(k) <= prec) s.terms_.push_back({k, c});
  return s;
}

template <class R>
Series<R> Series<R>::variable(int nvars, int i, int prec) {
  std::vector<int> e(nvars, 0);
  e.at(i) = 1;
  return monomial(nvars, e, R(Rational(1)), prec);
}

template <class R>
Series<R> Series<R>::from_terms(int nvars, int prec, std::vector<Term> raw) {
  Series s(nvars, prec);
  std::erase_if(raw, [&](const Term& t) { return key_degree(t.key) > prec || fc::is_zero(t.coef); });
  std::sort(raw.begin(), raw.end(), [](const Term& a, const Term& b) { return term_less(a.key, b.key); });
  for (auto& t : raw) {
    if (!s.terms_.empty() && s.terms_.back().key == t.key) {
      s.terms_.back().coef += t.coef;
    } else {
      s.terms_.push_back(std::move(t));
    }
  }
  std::erase_if(s.terms_, [](const Term& t) { return fc::is_zero(t.coef); });
  return s;
}

template <class R>
int Series<R>::valuation() const {
  if (!terms_.empty()) return key_degree(terms_.front().key);
  return prec_ >= kExact ? kExact : prec_ + 1;
}

template <class R>
R Series<R>::coefficient(ExpKey k) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), k, [](const Term& t, ExpKey x) { return term_less(t.key, x); });
  if (it != terms_.end() && it->key == k) return it->coef;
  return R();
}

template <class R>
R Series<R>::coefficient(const std::vector<int>& exps) const {
  if (static_cast<int>(exps.size()) != nvars_) throw DomainError("exponent vector length mismatch");
  return coefficient(make_key(exps));
}

template <class R>
Series<R> Series<R>::operator+(const Series& o) const {
  if (o.nvars_ != nvars_) throw DomainError("series variable mismatch");
  Series r(nvars_, std::min(prec_, o.prec_));
  std::size_t i = 0, j = 0;
  auto keep = [&](ExpKey k) { return key_degree(k) <= r.prec_; };
  while (i < terms_.size() || j < o.terms_.size()) {
    if (j == o.terms_.size() || (i < terms_.size() && term_less(terms_[i].key, o.terms_[j].key))) {
      if (keep(terms_[i].key)) r.terms_.push_back(terms_[i]);
      ++i;
    } else if (i == terms_.size() || term_less(o.terms_[j].key, terms_[i].key)) {
      if (keep(o.terms_[j].key)) r.terms_.push_back(o.terms_[j]);
      ++j;
    } else {
      if (keep(terms_[i].key)) {
        R c = terms_[i].coef + o.terms_[j].coef;
        if (!fc::is_zero(c)) r.terms_.push_back({terms_[i].key, std::move(c)});
      }
      ++i;
      ++j;
    }
  }
  return r;
}

template <class R>
Series<R> Series<R>::operator-() const {
  Series r = *this;
  for (auto& t : r.terms_) t.coef = -t.coef;
  return r;
}

template <class R>
Series<R> Series<R>::operator-(const Series& o) const {
  return *this + (-o);
}

template <class R>
Series<R> Series<R>::operator*(const Series& o) const {
  if (o.nvars_ != nvars_) throw DomainError("series variable mismatch");
  // a factor of valuation v extends the known range of the other factor by v
  long p1 = static_cast<long>(prec_) + o.valuation(), p2 = static_cast<long>(o.prec_) + valuation();
  int prec = static_cast<int>(std::min<long>({p1, p2, kExact}));
  Acc<R> acc;
  for (const auto& a : terms_) {
    int da = key_degree(a.key);
    if (da > prec) break;
    for (const auto& b : o.terms_) {
      if (da + key_degree(b.key) > prec) break;
      acc.add_product(a.key + b.key, a.coef, b.coef);
    }
  }
  return from_terms(nvars_, prec, acc.finish());
}

template <class R>
Series<R> Series<R>::scaled(const Rational& c) const {
  Series r(nvars_, prec_);
  if (c == 0) return r;
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back({t.key, scale_of(t.coef, c)});
  return r;
}

template <class R>
Series<R> Series<R>::times(const R& c) const {
  Series r(nvars_, prec_);
  for (const auto& t : terms_) {
    R v = t.coef * c;
    if (!fc::is_zero(v)) r.terms_.push_back({t.key, std::move(v)});
  }
  return r;
}

template <class R>
bool Series<R>::operator==(const Series& o) const {
  if (nvars_ != o.nvars_ || prec_ != o.prec_ || terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].key != o.terms_[i].key || !(terms_[i].coef == o.terms_[i].coef)) return false;
  return true;
}

template <class R>
Series<R> Series<R>::truncated(int d) const {
  Series r(nvars_, std::min(d, prec_));
  for (const auto& t : terms_) {
    if (key_degree(t.key) > r.prec_) break;
    r.terms_.push_back(t);
  }
  return r;
}

template <class R>
Series<R> Series<R>::pow(int k) const {
  if (k < 0) throw DomainError("negative series power");
  Series result = constant(nvars_, R(Rational(1)), prec_);
  Series base = *this;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

template <class R>
Series<R> Series<R>::deriv(int i) const {
  Series r(nvars_, prec_ >= kExact ? kExact : prec_ - 1);
  std::vector<Term> raw;
  for (const auto& t : terms_) {
    int e = key_exp(t.key, i);
    if (e == 0) continue;
    raw.push_back({with_var(t.key, i, e - 1), scale_of(t.coef, Rational(e))});
  }
  return from_terms(nvars_, r.prec_, std::move(raw));
}

template <class R>
Series<R> Series<R>::theta(int i) const {
  Series r(nvars_, prec_);
  for (const auto& t : terms_) {
    int e = key_exp(t.key, i);
    if (e != 0) r.terms_.push_back({t.key, scale_of(t.coef, Rational(e))});
  }
  return r;
}

template <class R>
Series<R> Series<R>::shifted(int i, int k) const {
  if (k < 0) throw DomainError("negative shift");
  int prec = prec_ >= kExact ? kExact : prec_ + k;
  std::vector<Term> raw;
  raw.reserve(terms_.size());
  for (const auto& t : terms_) raw.push_back({with_var(t.key, i, key_exp(t.key, i) + k), t.coef});
  return from_terms(nvars_, prec, std::move(raw));
}

template <class R>
Series<R> Series<R>::unit_inverse() const {
  R c0 = constant_term();
  Rational inv = inverse_of(c0);
  if (prec_ >= kExact) {
    if (terms_.size() == 1) return constant(nvars_, R(inv), kExact);
    throw DomainError("inverse of an exact non-constant polynomial needs a finite precision");
  }
  std::vector<Series> parts(prec_ + 1, Series(nvars_, kExact));
  for (const auto& t : terms_) parts[key_degree(t.key)].terms_.push_back(t);
  std::vector<Series> h(prec_ + 1, Series(nvars_, kExact));
  h[0] = constant(nvars_, R(inv), kExact);
  for (int d = 1; d <= prec_; ++d) {
    Series acc(nvars_, kExact);
    for (int j = 1; j <= d; ++j)
      if (!parts[j].is_zero() && !h[d - j].is_zero()) acc += parts[j] * h[d - j];
    h[d] = acc.scaled(-inv);
  }
  Series r(nvars_, prec_);
  for (auto& part : h)
    for (auto& t : part.terms_) r.terms_.push_back(std::move(t));
  return r;
}

template <class R>
Series<R> Series<R>::log_one_minus() const {
  if (!fc::is_zero(constant_term())) throw DomainError("log(1 - f) needs f(0) = 0");
  if (prec_ >= kExact) throw DomainError("logarithm of an exact polynomial needs a finite precision");
  Series result(nvars_, prec_);
  Series power = *this;
  for (int k = 1; k <= prec_ && !power.is_zero(); ++k) {
    result -= power.scaled(Rational(1, k));
    power = power * *this;
  }
  return result;
}

template <class R>
std::optional<Series<R>> Series<R>::try_divided_difference(int a, int b) const {
  if (a == b) throw DomainError("divided difference needs two distinct variables");
  std::map<std::pair<ExpKey, int>, std::vector<R>> groups;
  for (const auto& t : terms_) {
    int ea = key_exp(t.key, a), eb = key_exp(t.key, b);
    int s = ea + eb;
    auto& c = groups[{clear_var(clear_var(t.key, a), b), s}];
    if (c.empty()) c.resize(s + 1);
    c[ea] = t.coef;
  }
  int prec = prec_ >= kExact ? kExact : prec_ - 1;
  std::vector<Term> raw;
  for (auto& [g, c] : groups) {
    auto [rest, s] = g;
    if (s == 0) return std::nullopt;
    // c_j = d_{j-1} - d_j
    R d = c[s];
    for (int j = s - 1; j >= 0; --j) {
      ExpKey k = with_var(with_var(rest, a, j), b, s - 1 - j);
      if (!fc::is_zero(d)) raw.push_back({k, d});
      d = c[j] + d;
    }
    if (!fc::is_zero(d)) return std::nullopt;
  }
  return from_terms(nvars_, prec, std::move(raw));
}

template <class R>
Series<R> Series<R>::divided_difference(int a, int b) const {
  auto q = try_divided_difference(a, b);
  if (!q) throw DomainError("series does not vanish on the diagonal Y" + std::to_string(a + 1) + " = Y" + std::to_string(b + 1));
  return *q;
}

template <class R>
Series<R> Series<R>::compose(int i, const Series& g) const {
  if (g.nvars_ != 1) throw DomainError("composition needs a univariate series");
  if (!fc::is_zero(g.constant_term())) throw DomainError("composition needs g(0) = 0");
  // g^e is known to degree g.prec + e - 1, the Y_i^e part of this to prec - e.
  std::vector<int> place{i};
  Series G = g.relabeled(place, nvars_);
  std::map<int, std::vector<Term>> by_exp;
  for (const auto& t : terms_) by_exp[key_exp(t.key, i)].push_back({clear_var(t.key, i), t.coef});
  Series result(nvars_, prec_);
  Series power = constant(nvars_, R(Rational(1)));
  int at = 0;
  for (auto& [e, raw] : by_exp) {
    while (at < e) {
      power = power * G;
      ++at;
    }
    int part_prec = prec_ >= kExact ? kExact : prec_ - e;
    result += from_terms(nvars_, part_prec, std::move(raw)) * power;
  }
  return result;
}

template <class R>
Series<R> Series<R>::relabeled(const std::vector<int>& perm, int new_nvars) const {
  if (static_cast<int>(perm.size()) != nvars_) throw DomainError("relabeling needs one target per variable");
  std::vector<Term> raw;
  raw.reserve(terms_.size());
  for (const auto& t : terms_) {
    ExpKey k = 0;
    for (int v = 0; v < nvars_; ++v) {
      int e = key_exp(t.key, v);
      if (e == 0) continue;
      if (perm[v] < 0 || perm[v] >= new_nvars) throw DomainError("relabeling target out of range");
      k += static_cast<ExpKey>(e) << (8 * perm[v]);
    }
    raw.push_back({k, t.coef});
  }
  return from_terms(new_nvars, prec_, std::move(raw));
}

template <class R>
std::string Series<R>::to_string(const std::string& symbol) const {
  std::string out;
  for (const auto& t : terms_) append_coef(out, t.coef, y_monomial(t.key, nvars_, symbol));
  return out.empty() ? "0" : out;
}

template class Series<KappaPoly>;
template class Series<Rational>;

std::string dump_series(const KSeries& s, const std::string& symbol) {
  std::ostringstream os;
  os << "# D=" << (s.prec() >= kExact ? std::string("exact") : std::to_string(s.prec())) << " vars=";
  for (int i = 0; i < s.nvars(); ++i) os << (i ? "," : "") << symbol << i + 1;
  os << "\n" << s.to_string(symbol) << "\n";
  return os.str();
}

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace

KSeries parse_series(std::string_view text) {
  std::string header, body;
  {
    std::string t(text);
    auto nl = t.find('\n');
    if (t.rfind("#", 0) == 0) {
      header = t.substr(0, nl);
      body = nl == std::string::npos ? "" : t.substr(nl + 1);
    } else {
      body = t;
    }
  }
  int prec = kExact;
  int nvars = 0;
  std::string symbol = "Y";
  if (!header.empty()) {
    std::istringstream hs(header.substr(1));
    std::string tok;
    while (hs >> tok) {
      if (tok.rfind("D=", 0) == 0) {
        std::string v = tok.substr(2);
        prec = v == "exact" ? kExact : std::stoi(v);
      } else if (tok.rfind("vars=", 0) == 0) {
        std::string v = tok.substr(5);
        nvars = static_cast<int>(std::count(v.begin(), v.end(), ',')) + 1;
        symbol = v.substr(0, v.find_first_of("0123456789"));
      }
    }
  }
  // split the body at top-level signs
  std::vector<std::pair<int, std::string>> pieces;
  {
    int depth = 0;
    int sign = 1;
    std::string cur;
    std::string b = trim(body);
    for (std::size_t i = 0; i < b.size(); ++i) {
      char ch = b[i];
      if (ch == '[' || ch == '(') ++depth;
      if (ch == ']' || ch == ')') --depth;
      bool exponent_sign = i > 0 && b[i - 1] == '^';
      if (depth == 0 && (ch == '+' || ch == '-') && !exponent_sign) {
        if (!trim(cur).empty()) pieces.emplace_back(sign, trim(cur));
        cur.clear();
        sign = ch == '-' ? -1 : 1;
        continue;
      }
      cur += ch;
    }
    if (!trim(cur).empty()) pieces.emplace_back(sign, trim(cur));
  }
  std::vector<KSeries::Term> raw;
  int seen_vars = 1;
  for (auto& [sign, piece] : pieces) {
    if (piece == "0") continue;
    Rational c(sign);
    Monomial m;
    std::vector<int> exps(kMaxVars, 0);
    std::vector<std::string> factors;
    {
      int depth = 0;
      std::string cur;
      for (char ch : piece) {
        if (ch == '[' || ch == '(') ++depth;
        if (ch == ']' || ch == ')') --depth;
        if (ch == '*' && depth == 0) {
          factors.push_back(trim(cur));
          cur.clear();
        } else {
          cur += ch;
        }
      }
      factors.push_back(trim(cur));
    }
    for (auto f : factors) {
      if (f.empty()) throw DomainError("empty factor in series text");
      if (f.front() == '(') {
        if (f.back() != ')') throw DomainError("unbalanced parenthesis in series text");
        c *= parse_rational(f.substr(1, f.size() - 2));
      } else if (f.front() == 'k') {
        KappaPoly k = KappaPoly::parse(f);
        if (k.size() != 1) throw DomainError("bad cumulant factor: " + f);
        c *= k.terms()[0].second;
        for (auto id : k.terms()[0].first) m.push_back(id);
      } else if (f.rfind(symbol, 0) == 0 && f.size() > symbol.size() && std::isdigit(static_cast<unsigned char>(f[symbol.size()]))) {
        auto caret = f.find('^');
        int v = std::stoi(f.substr(symbol.size(), caret - symbol.size())) - 1;
        int e = caret == std::string::npos ? 1 : std::stoi(f.substr(caret + 1));
        if (v < 0 || v >= kMaxVars) throw DomainError("series variable out of range: " + f);
        exps[v] += e;
        seen_vars = std::max(seen_vars, v + 1);
      } else {
        c *= parse_rational(f);
      }
    }
    std::sort(m.begin(), m.end());
    exps.resize(kMaxVars);
    raw.push_back({make_key(exps), KappaPoly::from_terms({{m, c}})});
  }
  if (nvars == 0) nvars = seen_vars;
  if (seen_vars > nvars) throw DomainError("series text uses more variables than its header declares");
  return KSeries::from_terms(nvars, prec, std::move(raw));
}

QSeries specialize(const KSeries& s, std::uint64_t seed) {
  auto value = [seed](KappaId id) { return specialization_value(id, seed); };
  return s.mapped([&](const KappaPoly& p) { return p.evaluate(value); });
}

namespace {

std::vector<KappaId> series_first_order_ids(const KSeries& s) {
  std::vector<KappaId> ids;
  for (const auto& t : s.terms()) {
    auto more = t.coef.first_order_ids();
    ids.insert(ids.end(), more.begin(), more.end());
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

KSeries kappa_derivative(const KSeries& s, KappaId id) {
  return s.mapped([id](const KappaPoly& p) { return p.derivative(id); });
}

}  // namespace

KSeries D_operator(const std::vector<KSeries>& args) {
  if (args.empty()) throw DomainError("D operator needs at least one argument");
  int nvars = args[0].nvars();
  int prec = kExact;
  for (const auto& a : args) {
    if (a.nvars() != nvars) throw DomainError("series variable mismatch");
    prec = std::min(prec, a.prec());
  }
  std::vector<std::vector<std::pair<int, KSeries>>> partials(args.size());
  for (std::size_t i = 0; i < args.size(); ++i)
    for (auto id : series_first_order_ids(args[i])) partials[i].emplace_back(kappa_index(id)[0], kappa_derivative(args[i], id));
  KSeries result(nvars, prec);
  std::vector<int> idx;
  std::function<void(std::size_t, const KSeries&)> rec = [&](std::size_t i, const KSeries& acc) {
    if (i == args.size()) {
      result += acc.times(KappaPoly::kappa(idx));
      return;
    }
    for (const auto& [q, g] : partials[i]) {
      idx.push_back(q);
      rec(i + 1, i == 0 ? g : acc * g);
      idx.pop_back();
    }
  };
  rec(0, KSeries(nvars, prec));
  return result;
}

TensorState D_tensor(const std::vector<int>& K, const TensorState& state) {
  TensorState out;
  for (const auto& term : state) {
    for (int g : K)
      if (g < 0 || g >= static_cast<int>(term.factors.size())) throw DomainError("tensor block index out of range");
    std::vector<std::vector<std::pair<int, KSeries>>> partials(K.size());
    for (std::size_t j = 0; j < K.size(); ++j) {
      const KSeries& f = term.factors[K[j]];
      for (auto id : series_first_order_ids(f)) {
        KSeries d = kappa_derivative(f, id);
        if (!d.is_zero()) partials[j].emplace_back(kappa_index(id)[0], std::move(d));
      }
    }
    std::vector<int> idx;
    TensorTerm cur = term;
    std::function<void(std::size_t)> rec = [&](std::size_t j) {
      if (j == K.size()) {
        TensorTerm t = cur;
        t.coef = term.coef * KappaPoly::kappa(idx);
        out.push_back(std::move(t));
        return;
      }
      for (const auto& [q, d] : partials[j]) {
        idx.push_back(q);
        cur.factors[K[j]] = d;
        rec(j + 1);
        idx.pop_back();
      }
      cur.factors[K[j]] = term.factors[K[j]];
    };
    rec(0);
  }
  return out;
}

KSeries P_product(const TensorState& state) {
  if (state.empty()) throw DomainError("empty tensor state");
  int nvars = state[0].factors.at(0).nvars();
  int prec = kExact;
  for (const auto& t : state)
    for (const auto& f : t.factors) prec = std::min(prec, f.prec());
  KSeries result(nvars, prec);
  for (const auto& t : state) {
    KSeries prod = KSeries::constant(nvars, t.coef, prec);
    for (const auto& f : t.factors) prod = prod * f;
    result += prod;
  }
  return result;
}

template <class R>
Series<R> difference_power(int nvars, int a, int b, int k) {
  Series<R> base = Series<R>::variable(nvars, a) - Series<R>::variable(nvars, b);
  return base.pow(k);
}

template Series<KappaPoly> difference_power<KappaPoly>(int, int, int, int);
template Series<Rational> difference_power<Rational>(int, int, int, int);

template <class R>
PolarSeries<R>::PolarSeries() : num_(1), exps_(kMaxVars * kMaxVars, 0) {}

template <class R>
PolarSeries<R>::PolarSeries(const Series<R>& s) : num_(s), exps_(kMaxVars * kMaxVars, 0) {}

template <class R>
PolarSeries<R> PolarSeries<R>::pole(int nvars, int a, int b, int e) {
  if (a == b || e < 0) throw DomainError("bad pole");
  PolarSeries p(Series<R>::constant(nvars, R(Rational(a < b ? 1 : sign_pow(e)))));
  p.e(std::min(a, b), std::max(a, b)) = e;
  return p;
}

template <class R>
PolarSeries<R> PolarSeries<R>::kernel(int nvars, int a, int b) {
  std::vector<int> ex(nvars, 0);
  ex[a] = 1;
  ex[b] = 1;
  PolarSeries p(Series<R>::monomial(nvars, ex, R(Rational(1))));
  p.e(std::min(a, b), std::max(a, b)) = 2;
  return p;
}

template <class R>
int PolarSeries<R>::exponent(int a, int b) const {
  return e(std::min(a, b), std::max(a, b));
}

template <class R>
int PolarSeries<R>::pole_degree() const {
  int d = 0;
  for (int x : exps_) d += x;
  return d;
}

template <class R>
PolarSeries<R> PolarSeries<R>::raised_to(const std::vector<int>& target) const {
  PolarSeries r = *this;
  int n = nvars();
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      int extra = target[a * kMaxVars + b] - e(a, b);
      if (extra > 0) {
        r.num_ = r.num_ * difference_power<R>(n, a, b, extra);
        r.e(a, b) += extra;
      }
    }
  return r;
}

template <class R>
PolarSeries<R> PolarSeries<R>::operator+(const PolarSeries& o) const {
  if (o.nvars() != nvars()) throw DomainError("series variable mismatch");
  std::vector<int> target(kMaxVars * kMaxVars);
  for (std::size_t i = 0; i < target.size(); ++i) target[i] = std::max(exps_[i], o.exps_[i]);
  PolarSeries a = raised_to(target), b = o.raised_to(target);
  a.num_ = a.num_ + b.num_;
  return a;
}

template <class R>
PolarSeries<R> PolarSeries<R>::operator-() const {
  PolarSeries r = *this;
  r.num_ = -r.num_;
  return r;
}

template <class R>
PolarSeries<R> PolarSeries<R>::operator-(const PolarSeries& o) const {
  return *this + (-o);
}

template <class R>
PolarSeries<R> PolarSeries<R>::operator*(const PolarSeries& o) const {
  if (o.nvars() != nvars()) throw DomainError("series variable mismatch");
  PolarSeries r = *this;
  r.num_ = num_ * o.num_;
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] += o.exps_[i];
  return r;
}

template <class R>
PolarSeries<R> PolarSeries<R>::scaled(const Rational& c) const {
  PolarSeries r = *this;
  r.num_ = num_.scaled(c);
  return r;
}

template <class R>
PolarSeries<R> PolarSeries<R>::theta(int i) const {
  int n = nvars();
  PolarSeries r = *this;
  r.num_ = num_.theta(i);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      int ex = e(a, b);
      if (ex == 0 || (a != i && b != i)) continue;
      // Y_i d/dY_i (Y_a - Y_b)^{-e} = -+ e Y_i (Y_a - Y_b)^{-e-1}
      PolarSeries t = *this;
      t.num_ = num_.shifted(i, 1).scaled(Rational(a == i ? -ex : ex));
      t.e(a, b) += 1;
      r = r + t;
    }
  return r;
}

template <class R>
PolarSeries<R> PolarSeries<R>::deriv(int i) const {
  int n = nvars();
  PolarSeries r = *this;
  r.num_ = num_.deriv(i);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      int ex = e(a, b);
      if (ex == 0 || (a != i && b != i)) continue;
      PolarSeries t = *this;
      t.num_ = num_.scaled(Rational(a == i ? -ex : ex));
      t.e(a, b) += 1;
      r = r + t;
    }
  return r;
}

template <class R>
PolarSeries<R> PolarSeries<R>::relabeled(const std::vector<int>& perm) const {
  int n = nvars();
  PolarSeries r(num_.relabeled(perm));
  int sign = 1;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      int ex = e(a, b);
      if (ex == 0) continue;
      int pa = perm[a], pb = perm[b];
      if (pa == pb) throw DomainError("relabeling merges a pole pair");
      if (pa > pb) {
        std::swap(pa, pb);
        sign *= sign_pow(ex);
      }
      r.e(pa, pb) += ex;
    }
  if (sign < 0) r.num_ = -r.num_;
  return r;
}

template <class R>
PolarSeries<R> PolarSeries<R>::reduced() const {
  PolarSeries r = *this;
  int n = nvars();
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      while (r.e(a, b) > 0) {
        auto q = r.num_.try_divided_difference(a, b);
        if (!q) break;
        r.num_ = std::move(*q);
        r.e(a, b) -= 1;
      }
  return r;
}

template <class R>
Series<R> PolarSeries<R>::to_series() const {
  PolarSeries r = reduced();
  if (r.pole_degree() != 0) throw DomainError("pole does not cancel");
  return r.num_;
}

template <class R>
PolarSeries<R> PolarSeries<R>::compose_all(const Series<R>& g) const {
  int n = nvars();
  Series<R> num = num_;
  for (int i = 0; i < n; ++i) num = num.compose(i, g);
  PolarSeries r(num);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      int ex = e(a, b);
      if (ex == 0) continue;
      Series<R> ga = g.relabeled({a}, n), gb = g.relabeled({b}, n);
      Series<R> u = (ga - gb).truncated(std::min(num.prec(), kExact - 1) + 1).divided_difference(a, b);
      r.num_ = r.num_ * u.unit_inverse().pow(ex);
      r.e(a, b) = ex;
    }
  return r;
}

template class PolarSeries<KappaPoly>;
template class PolarSeries<Rational>;

}  // namespace fc
