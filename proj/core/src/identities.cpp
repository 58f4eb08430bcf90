#include "freecum/identities.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <numeric>
#include <type_traits>

#include "json.hpp"

#include "freecum/trees.hpp"

namespace fc {

namespace {

template <class R>
using P = PolarSeries<R>;

template <class R>
using Body = std::function<std::vector<Check<R>>(const GenFun<R>&, int depth, const VerifyOptions&)>;

std::string coef_string(const KappaPoly& p) { return p.to_string(); }
std::string coef_string(const Rational& q) { return to_string(q); }

std::string monomial_string(ExpKey k, int nvars, const std::string& symbol) {
  std::string s;
  for (int i = 0; i < nvars; ++i) {
    int e = key_exp(k, i);
    if (e == 0) continue;
    if (!s.empty()) s += "*";
    s += symbol + std::to_string(i + 1);
    if (e > 1) s += "^" + std::to_string(e);
  }
  return s.empty() ? "1" : s;
}

// numerator of p times prod (Y_a - Y_b)^{E_ab - e_ab}
template <class R>
Series<R> cleared(const P<R>& p, const std::vector<std::pair<std::pair<int, int>, int>>& target) {
  Series<R> s = p.numerator();
  for (const auto& [ab, e] : target) {
    int extra = e - p.exponent(ab.first, ab.second);
    if (extra > 0) s = s * difference_power<R>(p.nvars(), ab.first, ab.second, extra);
  }
  return s;
}

struct Outcome {
  bool pass = true;
  int prec = kExact;
  std::string part, monomial, lhs, rhs;
};

template <class R>
Outcome compare(const std::vector<Check<R>>& checks, int depth) {
  Outcome out;
  for (const auto& c : checks) {
    int n = c.lhs.nvars();
    std::vector<std::pair<std::pair<int, int>, int>> target;
    int extra_degree = 0;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) {
        int e = std::max(c.lhs.exponent(a, b), c.rhs.exponent(a, b));
        if (e > 0) target.push_back({{a, b}, e});
        extra_degree += e;
      }
    Series<R> l = cleared(c.lhs, target), r = cleared(c.rhs, target);
    int limit = depth + extra_degree;
    out.prec = std::min(out.prec, std::min(l.prec(), r.prec()) - extra_degree);
    if (!out.pass) continue;
    Series<R> diff = (l - r).truncated(std::min(limit, std::min(l.prec(), r.prec())));
    if (diff.is_zero()) continue;
    ExpKey k = diff.terms().front().key;
    out.pass = false;
    out.part = c.part;
    out.monomial = monomial_string(k, n, c.symbol);
    for (const auto& [ab, e] : target)
      out.monomial += " [x (" + c.symbol + std::to_string(ab.first + 1) + "-" + c.symbol +
                      std::to_string(ab.second + 1) + ")^" + std::to_string(e) + "]";
    out.lhs = coef_string(l.coefficient(k));
    out.rhs = coef_string(r.coefficient(k));
  }
  return out;
}

template <class R>
P<R> ps(const Series<R>& s) {
  return P<R>(s);
}

// ---- bodies ----

template <class R>
std::vector<Check<R>> order1_of_order2(const GenFun<R>& g, int, const VerifyOptions&) {
  Series<R> u = (g.X(0) - g.X(1)).divided_difference(0, 1);
  P<R> rhs = -(g.kernel(0, 1) * ps(g.dXdY(0) * g.dXdY(1) * u.unit_inverse().pow(2)));
  return {{"tilde C2 - K", ps(g.tildeC2(0, 1)) - g.kernel(0, 1), rhs}};
}

template <class R>
std::vector<Check<R>> c2dd(const GenFun<R>& g, int, const VerifyOptions&) {
  const Series<R>& c = g.C1(0);
  return {{"C1 - Y C1'", ps(c - g.var(0) * c.deriv(0)), ps(c * c * g.X(0).deriv(0))}};
}

template <class R>
std::vector<Check<R>> hatC_defs(const GenFun<R>& g, int, const VerifyOptions&) {
  std::vector<Check<R>> out;
  for (int p = 2; p <= 4; ++p) {
    VarList v(p);
    std::iota(v.begin(), v.end(), 0);
    out.push_back({"hat C_" + std::to_string(p), ps(g.hatC(v)), ps(g.hatC_def(v))});
  }
  const std::vector<BlockList> pis = {{{0}, {1}}, {{0}, {1, 2}}, {{0, 1}, {2, 3}}, {{0}, {1, 2, 3}}, {{0}, {1}, {2, 3}}};
  for (const auto& pi : pis) {
    std::string label = "hat C_pi";
    for (const auto& b : pi) {
      label += "{";
      for (std::size_t j = 0; j < b.size(); ++j) label += (j ? "," : "") + std::to_string(b[j] + 1);
      label += "}";
    }
    out.push_back({label, ps(g.hatC_pi(pi)), ps(g.hatC_pi_def(pi))});
    if constexpr (std::is_same_v<R, KappaPoly>) {
      // fused-index series as the D operator applied to the one-block hats
      std::vector<KSeries> args;
      for (const auto& b : pi) args.push_back(g.hatC(b).truncated(g.prec()));
      out.push_back({label + " via D", ps(D_operator(args)), ps(g.hatC_pi_def(pi))});
    }
  }
  return out;
}

template <class R>
std::vector<Check<R>> lagrange(const GenFun<R>& g, int depth, const VerifyOptions&) {
  Series<R> m1 = first_moment_series<R>(depth, g.ring());
  const Series<R>& c1 = g.C1(0);
  std::vector<Check<R>> out;
  for (int K = 0; K < depth; ++K)
    for (int j = K + 1; j <= depth; ++j) {
      std::vector<typename Series<R>::Term> lt, rt;
      Series<R> mp = m1.pow(j - K);
      for (int lam = j; lam <= depth; ++lam) {
        R l = c1.pow(lam - K).coefficient(std::vector<int>{lam - j});
        R r = mp.coefficient(std::vector<int>{lam - j}) * R(Rational(lam - K) / Rational(j - K));
        lt.push_back({make_key({lam}), l});
        rt.push_back({make_key({lam}), r});
      }
      out.push_back({"j=" + std::to_string(j) + ",K=" + std::to_string(K),
                     ps(Series<R>::from_terms(1, kExact, std::move(lt))),
                     ps(Series<R>::from_terms(1, kExact, std::move(rt))), "lambda"});
    }
  return out;
}

template <class R>
std::vector<Check<R>> second_order_functional(const GenFun<R>& g, int depth, const VerifyOptions&) {
  std::vector<typename Series<R>::Term> raw;
  for (int a = 1; a < depth; ++a)
    for (int b = 1; a + b <= depth; ++b) {
      KappaPoly m = higher_moments_bruteforce(canonical_profile({a, b}));
      raw.push_back({make_key({a, b}), to_ring<R>(KSeries::constant(1, m), g.ring()).constant_term()});
    }
  P<R> lhs = ps(Series<R>::from_terms(2, depth, std::move(raw))) + P<R>::kernel(2, 0, 1);
  Series<R> m1 = first_moment_series<R>(g.prec(), g.ring());
  Series<R> y = Series<R>::variable(1, 0) * m1;
  Series<R> dlog = y.deriv(0) * m1.unit_inverse();
  P<R> rhs = (ps(g.C({0, 1})) + g.kernel(0, 1)).compose_all(y);
  rhs = rhs * ps(dlog.relabeled({0}, 2) * dlog.relabeled({1}, 2));
  return {{"M2 + pole", lhs, rhs, "X"}};
}

template <class R>
std::vector<Check<R>> order1_of_order3(const GenFun<R>& g, int, const VerifyOptions&) {
  P<R> rhs;
  rhs = ps(Series<R>(3, kExact));
  const int roles[3][3] = {{0, 1, 2}, {1, 0, 2}, {2, 0, 1}};
  for (const auto& rr : roles) {
    int r = rr[0], s = rr[1], t = rr[2];
    P<R> f = ps(g.tildeC2(r, s) * g.tildeC2(r, t)) - g.kernel(r, s) * g.kernel(r, t);
    rhs -= (f * ps(g.E(r).unit_inverse())).theta(r);
  }
  return {{"tilde C3", ps(g.tildeC3(0, 1, 2)), rhs}};
}

template <class R>
std::vector<Check<R>> order2_of_order3(const GenFun<R>& g, int, const VerifyOptions&) {
  const VarList all{0, 1, 2};
  P<R> lhs = ps(g.barC_ab(all, 0, 1) + g.barC_ab(all, 0, 2) + g.barC_ab(all, 1, 2));
  P<R> rhs = ps(Series<R>(3, kExact));
  const int roles[3][3] = {{0, 1, 2}, {1, 0, 2}, {2, 0, 1}};
  for (const auto& rr : roles) {
    int r = rr[0], s = rr[1], t = rr[2];
    P<R> f = ps(g.C({std::min(r, s), std::max(r, s)})) * g.circC2(r, t) +
             g.circC2(r, s) * ps(g.C({std::min(r, t), std::max(r, t)}));
    rhs -= (f * ps(g.E(r).unit_inverse())).theta(r);
  }
  return {{"sum bar C_3", lhs, rhs}};
}

template <class R>
std::vector<Check<R>> prop_p_minus_1(const GenFun<R>& g, int p) {
  VarList all(p);
  std::iota(all.begin(), all.end(), 0);
  std::vector<Check<R>> out;
  for (int a = 0; a < p; ++a)
    for (int b = a + 1; b < p; ++b) {
      VarList no_a, no_b;
      for (int v : all) {
        if (v != a) no_a.push_back(v);
        if (v != b) no_b.push_back(v);
      }
      P<R> circ = g.circC2(a, b);
      P<R> rhs = -(ps(g.C(no_b) * g.E(a).unit_inverse()) * circ).theta(a) -
                 (ps(g.C(no_a) * g.E(b).unit_inverse()) * circ).theta(b);
      out.push_back({"{" + std::to_string(a + 1) + "," + std::to_string(b + 1) + "}", ps(g.barC_ab(all, a, b)), rhs});
    }
  return out;
}

template <class R>
std::vector<Check<R>> prop_p4(const GenFun<R>& g, int, const VerifyOptions&) {
  return prop_p_minus_1(g, 4);
}

template <class R>
std::vector<Check<R>> prop_p5(const GenFun<R>& g, int, const VerifyOptions&) {
  return prop_p_minus_1(g, 5);
}

template <class R>
const Series<R>& c2(const GenFun<R>& g, int a, int b) {
  return g.C({std::min(a, b), std::max(a, b)});
}

// Variables 0..3 stand for Y1..Y4.
template <class R>
std::vector<Check<R>> fourth_a(const GenFun<R>& g, int, const VerifyOptions& opt) {
  auto theta2 = [](P<R> f, int a, int b) { return f.theta(a).theta(b); };
  P<R> first = -theta2(g.kernel(0, 3) * ps(c2(g, 0, 1) * c2(g, 2, 3) * g.Q(0, 3).unit_inverse().pow(2)), 0, 3);
  // u: outer variable, v: the other end of the pole, s: partner in the outer C2, t: partner in the inner C2
  auto middle = [&](int u, int v, int s, int t) {
    const Series<R>& q = opt.uncorrected ? g.Q(u, s) : g.Q(u, v);
    P<R> inner = theta2(ps(g.var(u)) * g.pole(v, u) * ps(c2(g, t, v) * q.unit_inverse()), u, v);
    return (ps(c2(g, u, s) * g.E(u).unit_inverse()) * inner).theta(u);
  };
  P<R> lhs = first + middle(0, 3, 1, 2) + middle(3, 0, 2, 1);
  P<R> rhs = -theta2(ps(c2(g, 0, 1) * c2(g, 2, 3) * (g.E(0) * g.E(3)).unit_inverse()) * g.circC2(0, 3), 0, 3);
  return {{"C2(1,2) C2(3,4)", lhs, rhs}};
}

template <class R>
std::vector<Check<R>> fourth_b(const GenFun<R>& g, int, const VerifyOptions& opt) {
  auto theta2 = [](P<R> f, int a, int b) { return f.theta(a).theta(b); };
  P<R> lhs = theta2(ps(g.var(3).pow(2) * c2(g, 0, 1) * c2(g, 0, 2) * g.Q(0, 3).unit_inverse().pow(2)) * g.pole(0, 3, 2), 0, 3);
  // s: partner in the outer C2, t: partner in the inner C2
  auto middle = [&](int s, int t) {
    P<R> inner = theta2(ps(g.var(3) * c2(g, 0, t) * g.Q(0, 3).unit_inverse()) * g.pole(0, 3), 0, 3);
    return (ps(c2(g, 0, s) * g.E(0).unit_inverse()) * inner).theta(0);
  };
  lhs += middle(2, 1) + middle(1, 2);
  P<R> f = ps(g.dYdX(0) * c2(g, 0, 1) * c2(g, 0, 2) * g.C1(0).unit_inverse().pow(3)) * g.circC2(0, 3);
  P<R> last = opt.uncorrected ? g.x_derivative_power(f, 0, 2) : (ps(g.w(0)) * f.theta(0) - f).theta(0);
  return {{"C2(1,2) C2(1,3)", lhs, -last}};
}

template <class R>
std::vector<Check<R>> fourth_c(const GenFun<R>& g, int, const VerifyOptions& opt) {
  P<R> inner = (ps(g.var(3) * c2(g, 0, 1) * g.Q(0, 3).unit_inverse()) * g.pole(0, 3)).theta(0).theta(3);
  P<R> lhs = (ps(c2(g, 1, 2) * g.E(1).unit_inverse()) * inner).theta(1);
  P<R> circ = opt.uncorrected ? g.circC2(1, 3) : g.circC2(0, 3);
  P<R> rhs = -(ps(c2(g, 0, 1) * c2(g, 1, 2) * (g.E(0) * g.E(1)).unit_inverse()) * circ).theta(0).theta(1);
  return {{"C2(1,2) C2(2,3)", lhs, rhs}};
}

template <class R>
Series<R> one_block_tilde(const GenFun<R>& g, const VarList& I) {
  switch (I.size()) {
    case 2:
      return g.tildeC2(I[0], I[1]);
    case 3:
      return g.tildeC3(I[0], I[1], I[2]);
    default: {
      int q = static_cast<int>(I.size());
      return to_ring<R>(tildeC_from_ns(q, q, g.prec()), g.ring()).relabeled(I, g.nvars());
    }
  }
}

template <class R>
std::vector<Check<R>> conjecture_p4(const GenFun<R>& g, int, const VerifyOptions&) {
  return {conjecture_order1_check(g, 4)};
}

struct Entry {
  IdentityInfo info;
  int nvars;
  Body<KappaPoly> symbolic;
  Body<Rational> specialized;
};

#define FC_ENTRY(fn) fn<KappaPoly>, fn<Rational>

const std::vector<Entry>& entries() {
  static const std::vector<Entry> list = {
      {{"order1_of_order2", "tilde C2 - K against the X-form", false, 10, 14, 20}, 2, FC_ENTRY(order1_of_order2)},
      {{"c2dd", "C1 - Y C1' = C1^2 dX/dY", false, 12, 24, 30}, 1, FC_ENTRY(c2dd)},
      {{"hatC_defs", "closed forms of the fused-index series against their definitions", false, 8, 10, 14}, 4,
       FC_ENTRY(hatC_defs)},
      {{"lagrange", "Lagrange inversion between C1 powers and M1 powers", false, 10, 10, 10}, 1, FC_ENTRY(lagrange)},
      {{"second_order_functional", "M2 + pole against dlnY/dlnX products of C2 + K", false, 7, 7, 7}, 2,
       FC_ENTRY(second_order_functional)},
      {{"order1_of_order3", "first-order cancellation at third order", false, 8, 12, 16}, 3, FC_ENTRY(order1_of_order3)},
      {{"order2_of_order3", "second-order cancellation at third order", false, 8, 12, 16}, 3, FC_ENTRY(order2_of_order3)},
      {{"prop_p_minus_1_p4", "order p-1 cancellation at p = 4, each pair a<b", false, 8, 12, 16}, 4, FC_ENTRY(prop_p4)},
      {{"prop_p_minus_1_p5", "order p-1 cancellation at p = 5, each pair a<b", false, 7, 12, 16}, 5, FC_ENTRY(prop_p5)},
      {{"fourth_c2c2_a", "C2(1,2) C2(3,4) terms from tilde C2(1,4)", false, 8, 12, 16}, 4, FC_ENTRY(fourth_a)},
      {{"fourth_c2c2_b", "C2(1,2) C2(1,3) terms from tilde C2(1,4)", false, 8, 12, 16}, 4, FC_ENTRY(fourth_b)},
      {{"fourth_c2c2_c", "C2(1,2) C2(2,3) terms from tilde C2(1,4)", false, 8, 12, 16}, 4, FC_ENTRY(fourth_c)},
      {{"conjecture_order1_p4", "conjectured tree identity for the one-block corrections at p = 4", true, 6, 8, 8}, 4,
       FC_ENTRY(conjecture_p4)},
  };
  return list;
}

#undef FC_ENTRY

const Entry& entry(const std::string& name) {
  std::string n = name;
  if (n == "prop_p_minus_1") n = "prop_p_minus_1_p4";
  if (n == "conjecture_order1") n = "conjecture_order1_p4";
  for (const auto& e : entries())
    if (e.info.name == n) return e;
  throw DomainError("unknown identity '" + name + "'");
}

template <class R>
Outcome run(const Body<R>& body, int nvars, const Ring<R>& ring, const VerifyOptions& opt, int max_prec) {
  for (int slack = 0;; slack += 2) {
    int w = std::min(opt.depth + slack, max_prec);
    GenFun<R> g(nvars, w, ring);
    Outcome o = compare(body(g, opt.depth, opt), opt.depth);
    if (o.prec >= opt.depth || !o.pass) return o;
    if (w == max_prec) throw GuardError("working precision exhausted before reaching the requested depth");
  }
}

}  // namespace

template <class R>
Check<R> conjecture_order1_check(const GenFun<R>& g, int p) {
  if (p < 3 || p > 4) throw GuardError("tree identity implemented for p = 3, 4");
  int n = g.nvars();
  P<R> lhs = ps(Series<R>(n, kExact)), rhs = lhs;
  for (const auto& tree : enumerate_trees(p, TreeKind::G)) {
    Series<R> prod = g.one();
    P<R> poles = ps(g.one());
    bool all_pairs = true;
    for (auto e : tree.edges) {
      VarList I;
      for (int i = 0; i < p; ++i)
        if (e & (1u << i)) I.push_back(i);
      prod = prod * one_block_tilde(g, I);
      if (I.size() == 2)
        poles = poles * g.kernel(I[0], I[1]);
      else
        all_pairs = false;
    }
    P<R> f = all_pairs ? ps(prod) - poles : ps(prod);
    Series<R> pref = g.one();
    for (int i = 0; i < p; ++i) pref = pref * g.dYdX(i) * g.C1(i).unit_inverse().pow(tree.degree(i));
    f = f * ps(pref);
    for (int i = 0; i < p; ++i) f = g.x_derivative_power(f, i, tree.degree(i) - 1);
    if (tree.edges.size() == 1)
      lhs += f;
    else
      rhs -= f;
  }
  return {"tree sum", lhs, rhs};
}

template Check<KappaPoly> conjecture_order1_check(const GenFun<KappaPoly>&, int);
template Check<Rational> conjecture_order1_check(const GenFun<Rational>&, int);

const std::vector<IdentityInfo>& identity_registry() {
  static const std::vector<IdentityInfo> infos = [] {
    std::vector<IdentityInfo> v;
    for (const auto& e : entries()) v.push_back(e.info);
    return v;
  }();
  return infos;
}

const IdentityInfo& identity_info(const std::string& name) { return entry(name).info; }

IdentityReport verify_identity(const std::string& name, const VerifyOptions& opt) {
  const Entry& e = entry(name);
  int guard = opt.mode == Mode::Symbolic ? e.info.max_symbolic : e.info.max_specialized;
  if (opt.depth < 1 || opt.depth > guard)
    throw GuardError(e.info.name + ": depth must be in 1.." + std::to_string(guard) + " in this mode");
  // tables that cap the working precision
  int max_prec = 40;
  if (e.info.name == "conjecture_order1_p4") max_prec = 8;
  if (e.info.name == "second_order_functional" || e.info.name == "lagrange") max_prec = kMaxFreeMomentN;

  IdentityReport rep;
  rep.name = e.info.name;
  rep.depth = opt.depth;
  rep.mode = opt.mode;
  rep.seed = opt.mode == Mode::Specialized ? opt.seed : 0;
  rep.conjecture = e.info.conjecture;
  auto t0 = std::chrono::steady_clock::now();
  Outcome o = opt.mode == Mode::Symbolic ? run<KappaPoly>(e.symbolic, e.nvars, {}, opt, max_prec)
                                         : run<Rational>(e.specialized, e.nvars, Ring<Rational>{opt.seed}, opt, max_prec);
  rep.millis = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
  rep.pass = o.pass;
  rep.part = o.part;
  rep.monomial = o.monomial;
  rep.lhs = o.lhs;
  rep.rhs = o.rhs;
  return rep;
}

std::string IdentityReport::to_json() const {
  nlohmann::ordered_json j;
  j["name"] = name;
  j["depth"] = depth;
  j["mode"] = mode == Mode::Symbolic ? "symbolic" : "specialized";
  if (mode == Mode::Specialized) j["seed"] = seed;
  if (conjecture) j["conjecture"] = true;
  if (pass) {
    j["verdict"] = "pass";
  } else {
    j["verdict"] = {{"monomial", monomial}, {"lhs", lhs}, {"rhs", rhs}, {"part", part}};
  }
  j["millis"] = millis;
  return j.dump();
}

int exit_status(const std::vector<IdentityReport>& reports) {
  bool proven_fail = false, conj_fail = false;
  for (const auto& r : reports) {
    if (r.pass) continue;
    (r.conjecture ? conj_fail : proven_fail) = true;
  }
  return proven_fail ? 1 : conj_fail ? 2 : 0;
}

}  // namespace fc
