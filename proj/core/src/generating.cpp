#include "freecum/generating.hpp"

#include <algorithm>
#include <numeric>

#include "freecum/maps.hpp"
#include "freecum/partition.hpp"
#include "freecum/trees.hpp"

namespace fc {

namespace {

// parts >= 1, total <= max_sum
void for_each_composition(int parts, int max_sum, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> a(parts, 1);
  if (parts > max_sum) return;
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == parts) {
      f(a);
      return;
    }
    for (int v = 1; v <= left - (parts - 1 - i); ++v) {
      a[i] = v;
      rec(i + 1, left - v);
    }
  };
  rec(0, max_sum);
}

// exponent vector of an nvars space with exps[j] on vars[j]
std::vector<int> spread(int nvars, const VarList& vars, const std::vector<int>& exps) {
  std::vector<int> e(nvars, 0);
  for (std::size_t j = 0; j < vars.size(); ++j) e[vars[j]] += exps[j];
  return e;
}

template <class R>
R value_in(const KappaPoly& p, const Ring<R>& ring);

template <>
KappaPoly value_in(const KappaPoly& p, const Ring<KappaPoly>&) {
  return p;
}

template <>
Rational value_in(const KappaPoly& p, const Ring<Rational>& ring) {
  return p.evaluate([&](KappaId id) { return specialization_value(id, ring.seed); });
}

enum Kind { kC1, kC, kE, kX, kdXdY, kdYdX, kW, kHat, kQ, kT2, kT3 };

}  // namespace

template <class R>
Series<R> to_ring(const KSeries& s, const Ring<R>& ring) {
  return s.mapped([&](const KappaPoly& p) { return value_in<R>(p, ring); });
}

template KSeries to_ring(const KSeries&, const Ring<KappaPoly>&);
template QSeries to_ring(const KSeries&, const Ring<Rational>&);

template <class R>
GenFun<R>::GenFun(int nvars, int prec, Ring<R> ring) : nvars_(nvars), prec_(prec), ring_(ring) {
  if (nvars < 1 || nvars > kMaxVars) throw DomainError("unsupported number of series variables");
  if (prec < 1 || prec > 60) throw GuardError("series precision out of range");
}

template <class R>
const Series<R>& GenFun<R>::cached(int kind, const VarList& key, const std::function<Series<R>()>& make) const {
  auto k = std::make_pair(kind, key);
  auto it = cache_.find(k);
  if (it != cache_.end()) return it->second;
  Series<R> v = make();
  return cache_.emplace(std::move(k), std::move(v)).first->second;
}

template <class R>
const Series<R>& GenFun<R>::C1(int i) const {
  return cached(kC1, {i}, [&] {
    std::vector<typename Series<R>::Term> raw;
    raw.push_back({ExpKey{0}, R(Rational(1))});
    for (int a = 1; a <= prec_; ++a) {
      std::vector<int> e(nvars_, 0);
      e[i] = a;
      raw.push_back({make_key(e), kappa({a})});
    }
    return Series<R>::from_terms(nvars_, prec_, std::move(raw));
  });
}

template <class R>
const Series<R>& GenFun<R>::C(const VarList& vars) const {
  return cached(kC, vars, [&] {
    if (vars.size() == 1) return C1(vars[0]) - one();
    std::vector<typename Series<R>::Term> raw;
    for_each_composition(static_cast<int>(vars.size()), prec_, [&](const std::vector<int>& a) {
      raw.push_back({make_key(spread(nvars_, vars, a)), kappa(a)});
    });
    return Series<R>::from_terms(nvars_, prec_, std::move(raw));
  });
}

template <class R>
const Series<R>& GenFun<R>::E(int i) const {
  return cached(kE, {i}, [&] { return C1(i) - var(i) * C1(i).deriv(i); });
}

template <class R>
const Series<R>& GenFun<R>::X(int i) const {
  return cached(kX, {i}, [&] { return var(i) * C1(i).unit_inverse(); });
}

template <class R>
const Series<R>& GenFun<R>::dXdY(int i) const {
  return cached(kdXdY, {i}, [&] { return X(i).deriv(i); });
}

template <class R>
const Series<R>& GenFun<R>::dYdX(int i) const {
  return cached(kdYdX, {i}, [&] { return dXdY(i).unit_inverse(); });
}

template <class R>
const Series<R>& GenFun<R>::w(int i) const {
  return cached(kW, {i}, [&] { return C1(i) * E(i).unit_inverse(); });
}

template <class R>
Series<R> GenFun<R>::hatC_def(const VarList& vars) const {
  if (vars.size() == 1) return C1(vars[0]) - one();
  std::vector<typename Series<R>::Term> raw;
  for_each_composition(static_cast<int>(vars.size()), prec_, [&](const std::vector<int>& a) {
    raw.push_back({make_key(spread(nvars_, vars, a)), kappa({std::accumulate(a.begin(), a.end(), 0)})});
  });
  return Series<R>::from_terms(nvars_, prec_, std::move(raw));
}

template <class R>
const Series<R>& GenFun<R>::hatC(const VarList& vars) const {
  return cached(kHat, vars, [&] {
    int p = static_cast<int>(vars.size());
    if (p == 1) return C1(vars[0]) - one();
    // (-1)^p + sum_i C1(Y_i) prod_{j != i} Y_j / (Y_i - Y_j)
    PolarSeries<R> acc(Series<R>::constant(nvars_, R(Rational(sign_pow(p)))));
    for (int i : vars) {
      PolarSeries<R> t(C1(i));
      for (int j : vars)
        if (j != i) t = t * PolarSeries<R>(var(j)) * pole(i, j);
      acc += t;
    }
    return acc.to_series();
  });
}

template <class R>
Series<R> GenFun<R>::hatC_pi_def(const BlockList& blocks) const {
  VarList vars;
  for (const auto& b : blocks) vars.insert(vars.end(), b.begin(), b.end());
  std::vector<typename Series<R>::Term> raw;
  for_each_composition(static_cast<int>(vars.size()), prec_, [&](const std::vector<int>& a) {
    std::vector<int> idx;
    std::size_t at = 0;
    for (const auto& b : blocks) {
      int s = 0;
      for (std::size_t j = 0; j < b.size(); ++j) s += a[at++];
      idx.push_back(s);
    }
    raw.push_back({make_key(spread(nvars_, vars, a)), kappa(idx)});
  });
  return Series<R>::from_terms(nvars_, prec_, std::move(raw));
}

template <class R>
Series<R> GenFun<R>::hatC_pi(const BlockList& blocks) const {
  if (blocks.size() == 1) return hatC(blocks[0]);
  // sum over one chosen variable per block of C_d(chosen) prod Y_j / (Y_chosen - Y_j)
  PolarSeries<R> acc(Series<R>(nvars_, kExact));
  VarList chosen(blocks.size());
  std::function<void(std::size_t)> rec = [&](std::size_t g) {
    if (g == blocks.size()) {
      PolarSeries<R> t(C(chosen));
      for (std::size_t h = 0; h < blocks.size(); ++h)
        for (int j : blocks[h])
          if (j != chosen[h]) t = t * PolarSeries<R>(var(j)) * pole(chosen[h], j);
      acc += t;
      return;
    }
    for (int v : blocks[g]) {
      chosen[g] = v;
      rec(g + 1);
    }
  };
  rec(0);
  return acc.to_series();
}

template <class R>
const Series<R>& GenFun<R>::Q(int a, int b) const {
  VarList key{std::min(a, b), std::max(a, b)};
  return cached(kQ, key, [&] { return one() - hatC(key); });
}

template <class R>
Series<R> GenFun<R>::tildeC2_log(int a, int b) const {
  return (-hatC({a, b}).log_one_minus()).theta(a).theta(b);
}

template <class R>
Series<R> GenFun<R>::tildeC2_xform(int a, int b) const {
  // (X_a - X_b) = (Y_a - Y_b) u with u a unit
  Series<R> u = (X(a) - X(b)).divided_difference(a, b);
  Series<R> inner = one() - dXdY(a) * dXdY(b) * u.unit_inverse().pow(2);
  return (kernel(a, b) * PolarSeries<R>(inner)).to_series();
}

template <class R>
Series<R> GenFun<R>::tildeC2_polefree(int a, int b) const {
  Series<R> inner = one() - E(a) * E(b) * Q(a, b).unit_inverse().pow(2);
  return (kernel(a, b) * PolarSeries<R>(inner)).to_series();
}

template <class R>
const Series<R>& GenFun<R>::tildeC2(int a, int b) const {
  return cached(kT2, {a, b}, [&] { return tildeC2_log(a, b); });
}

template <class R>
PolarSeries<R> GenFun<R>::circC2(int a, int b) const {
  return kernel(a, b) * PolarSeries<R>(-(E(a) * E(b) * Q(a, b).unit_inverse().pow(2)));
}

template <class R>
Series<R> GenFun<R>::ratio_dd(const Series<R>& num, const Series<R>& den, int a, int b) {
  return num.divided_difference(a, b) * den.divided_difference(a, b).unit_inverse();
}

template <class R>
PolarSeries<R> GenFun<R>::theta_all(PolarSeries<R> f, const VarList& vars) {
  for (int v : vars) f = f.theta(v);
  return f;
}

template <class R>
Series<R> GenFun<R>::tildeC3_gen(int a, int b, int c) const {
  const Series<R>& h = hatC({a, b, c});
  Series<R> qab = Q(a, b).unit_inverse(), qac = Q(a, c).unit_inverse(), qbc = Q(b, c).unit_inverse();
  Series<R> first = ((one() + h).pow(2) + hatC({a, b}) * hatC({a, c}) * hatC({b, c}) - one()) * qab * qac * qbc;
  Series<R> second = (h.theta(a) - h) * qab * qac + (h.theta(b) - h) * qab * qbc + (h.theta(c) - h) * qac * qbc;
  return (first + second).theta(a).theta(b).theta(c);
}

template <class R>
Series<R> GenFun<R>::tildeC3_alt(int a, int b, int c) const {
  Series<R> num = var(c) * tildeC2(a, b) - var(a) * tildeC2(b, c);
  Series<R> den = var(a) * C1(c) - var(c) * C1(a);
  Series<R> first = ratio_dd(num, den, a, c).theta(a).theta(c);
  const Series<R>& h = hatC({a, b, c});
  Series<R> second = (h.theta(b) - h - hatC({a, b}) * hatC({b, c})) * Q(a, b).unit_inverse() * Q(b, c).unit_inverse();
  return first + second.theta(a).theta(b).theta(c);
}

template <class R>
Series<R> GenFun<R>::tildeC3_simple(int a, int b, int c) const {
  PolarSeries<R> acc(Series<R>(nvars_, kExact));
  const int roles[3][3] = {{a, b, c}, {b, a, c}, {c, b, a}};
  for (const auto& r : roles) {
    int v1 = r[0], v2 = r[1], v3 = r[2];
    Series<R> q12 = Q(v1, v2).unit_inverse(), q13 = Q(v1, v3).unit_inverse();
    Series<R> bracket = q12 + q13 - E(v1) * q12 * q13;
    acc += PolarSeries<R>(var(v2) * var(v3) * bracket) * pole(v1, v3) * pole(v1, v2);
  }
  return theta_all(acc, {a, b, c}).to_series();
}

template <class R>
const Series<R>& GenFun<R>::tildeC3(int a, int b, int c) const {
  return cached(kT3, {a, b, c}, [&] { return tildeC3_gen(a, b, c); });
}

template <class R>
Series<R> GenFun<R>::barC_ab(const VarList& vars, int a, int b) const {
  if (vars.size() < 3) throw DomainError("bar C_{p,{a,b}} needs p >= 3");
  VarList no_a, no_b;
  for (int v : vars) {
    if (v != a) no_a.push_back(v);
    if (v != b) no_b.push_back(v);
  }
  Series<R> num = var(b) * C(no_b) - var(a) * C(no_a);
  Series<R> den = var(a) * C1(b) - var(b) * C1(a);
  return ratio_dd(num, den, a, b).theta(a).theta(b);
}

template <class R>
Series<R> GenFun<R>::barC_22(int v1, int v2, int v3, int v4) const {
  Series<R> f = hatC_pi({{v1, v2}, {v3, v4}}) * Q(v1, v2).unit_inverse() * Q(v3, v4).unit_inverse();
  return f.theta(v1).theta(v2).theta(v3).theta(v4);
}

template <class R>
Series<R> GenFun<R>::barC_11T(int v1, int v2, int v3, int v4) const {
  Series<R> f = hatC_pi({{v1}, {v3, v4}}) * hatC_pi({{v2}, {v3, v4}}) * Q(v3, v4).unit_inverse().pow(2);
  return f.theta(v3).theta(v4);
}

template <class R>
Series<R> GenFun<R>::barC_31(int v1, int v2, int v3, int v4) const {
  PolarSeries<R> acc(Series<R>(nvars_, kExact));
  const int roles[3][3] = {{v1, v2, v3}, {v2, v1, v3}, {v3, v2, v1}};
  for (const auto& r : roles) {
    int a = r[0], b = r[1], c = r[2];
    Series<R> qab = Q(a, b).unit_inverse(), qac = Q(a, c).unit_inverse();
    const Series<R>& c2 = C({a, v4});
    Series<R> bracket = (c2.theta(a) - c2) * qab * qac +
                        hatC_pi({{a, b}, {v4}}) * qab.pow(2) * (one() - E(a) * qac) +
                        hatC_pi({{a, c}, {v4}}) * qac.pow(2) * (one() - E(a) * qab);
    acc += PolarSeries<R>(var(b) * var(c) * bracket) * pole(a, c) * pole(a, b);
  }
  return theta_all(acc, {v1, v2, v3}).to_series();
}

template <class R>
PolarSeries<R> GenFun<R>::x_derivative_power(const PolarSeries<R>& f, int i, int k) const {
  PolarSeries<R> g = f;
  for (int m = 0; m < k; ++m) g = PolarSeries<R>(w(i)) * g.theta(i) - g.scaled(Rational(m));
  return g;
}

template class GenFun<KappaPoly>;
template class GenFun<Rational>;

KappaPoly tilde_kappa_ns(const std::vector<int>& mu) {
  static std::map<std::vector<int>, KappaPoly> cache;
  auto it = cache.find(mu);
  if (it != cache.end()) return it->second;
  std::vector<KappaPoly::Term> raw;
  for (const auto& nu : enumerate_ns(mu)) {
    Monomial m;
    for (const auto& cyc : nu.cycles()) m.push_back(kappa_id({static_cast<int>(cyc.size())}));
    std::sort(m.begin(), m.end());
    raw.emplace_back(std::move(m), Rational(1));
  }
  return cache[mu] = KappaPoly::from_terms(std::move(raw));
}

KappaPoly tilde_kappa_formula(int m, int n) {
  KappaPoly acc;
  for (int r = 1; r <= std::min(m, n); ++r) {
    std::vector<int> is, js;
    std::function<void(std::vector<int>&, int, int, const std::function<void()>&)> comp =
        [&](std::vector<int>& v, int left, int parts, const std::function<void()>& done) {
          if (parts == 0) {
            if (left == 0) done();
            return;
          }
          for (int x = 1; x <= left - (parts - 1); ++x) {
            v.push_back(x);
            comp(v, left - x, parts - 1, done);
            v.pop_back();
          }
        };
    comp(is, m, r, [&] {
      comp(js, n, r, [&] {
        KappaPoly t(Rational(is[0] * n));
        for (int s = 0; s < r; ++s) t *= KappaPoly::kappa({is[s] + js[s]});
        acc += t;
      });
    });
  }
  return acc;
}

KSeries tildeC_from_ns(int p, int nvars, int prec) {
  std::vector<KSeries::Term> raw;
  VarList vars(p);
  std::iota(vars.begin(), vars.end(), 0);
  for_each_composition(p, prec, [&](const std::vector<int>& mu) {
    KappaPoly c = tilde_kappa_ns(mu);
    if (!c.is_zero()) raw.push_back({make_key(spread(nvars, vars, mu)), std::move(c)});
  });
  return KSeries::from_terms(nvars, prec, std::move(raw));
}

namespace {

// For one block and one exponent vector: attributed cycle sizes (one per incident blue
// vertex, in order) mapped to the sum of the leftover products.
using Attribution = std::map<std::vector<int>, KappaPoly>;

Attribution block_attributions(const std::vector<int>& mu, int degree) {
  static std::map<std::pair<std::vector<int>, int>, Attribution> cache;
  auto key = std::make_pair(mu, degree);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  Attribution out;
  for (const auto& nu : enumerate_ns(mu)) {
    std::vector<int> sizes;
    for (const auto& cyc : nu.cycles()) sizes.push_back(static_cast<int>(cyc.size()));
    int r = static_cast<int>(sizes.size());
    if (r < degree) continue;
    std::vector<int> pick;
    std::vector<bool> used(r, false);
    std::function<void()> rec = [&] {
      if (static_cast<int>(pick.size()) == degree) {
        KappaPoly rest(Rational(1));
        std::vector<int> att;
        for (int s : pick) att.push_back(sizes[s]);
        for (int s = 0; s < r; ++s)
          if (!used[s]) rest *= KappaPoly::kappa({sizes[s]});
        out[att] += rest;
        return;
      }
      for (int s = 0; s < r; ++s) {
        if (used[s]) continue;
        used[s] = true;
        pick.push_back(s);
        rec();
        pick.pop_back();
        used[s] = false;
      }
    };
    rec();
  }
  return cache[key] = out;
}

}  // namespace

KSeries barC_from_ns(const BlockList& blocks, const BlockTree& tree, int nvars, int prec) {
  VarList vars;
  for (const auto& b : blocks) vars.insert(vars.end(), b.begin(), b.end());
  int nb = static_cast<int>(blocks.size());
  // incident blue vertices of each block
  std::vector<std::vector<int>> inc(nb);
  for (std::size_t k = 0; k < tree.size(); ++k)
    for (int g : tree[k]) inc[g].push_back(static_cast<int>(k));
  std::vector<KSeries::Term> raw;
  for_each_composition(static_cast<int>(vars.size()), prec, [&](const std::vector<int>& mu) {
    std::vector<Attribution> per(nb);
    std::size_t at = 0;
    for (int g = 0; g < nb; ++g) {
      std::vector<int> mg(mu.begin() + at, mu.begin() + at + blocks[g].size());
      at += blocks[g].size();
      per[g] = block_attributions(mg, static_cast<int>(inc[g].size()));
      if (per[g].empty()) return;
    }
    KappaPoly total;
    std::vector<std::vector<int>> sizes(tree.size());
    std::function<void(int, const KappaPoly&)> rec = [&](int g, const KappaPoly& acc) {
      if (g == nb) {
        KappaPoly t = acc;
        for (const auto& s : sizes) t *= KappaPoly::kappa(s);
        total += t;
        return;
      }
      for (const auto& [att, rest] : per[g]) {
        for (std::size_t j = 0; j < att.size(); ++j) sizes[inc[g][j]].push_back(att[j]);
        rec(g + 1, acc * rest);
        for (std::size_t j = 0; j < att.size(); ++j) sizes[inc[g][j]].pop_back();
      }
    };
    rec(0, KappaPoly(Rational(1)));
    if (!total.is_zero()) raw.push_back({make_key(spread(nvars, vars, mu)), std::move(total)});
  });
  return KSeries::from_terms(nvars, prec, std::move(raw));
}

namespace {

KSeries one_block_correction(const VarList& block, const GenFun<KappaPoly>& g) {
  switch (block.size()) {
    case 1:
      return g.C1(block[0]);
    case 2:
      return g.tildeC2(block[0], block[1]);
    case 3:
      return g.tildeC3(block[0], block[1], block[2]);
    default: {
      int p = static_cast<int>(block.size());
      return tildeC_from_ns(p, p, g.prec()).relabeled(block, g.nvars());
    }
  }
}

}  // namespace

KSeries barC_tensor(const BlockList& blocks, const BlockTree& tree, const GenFun<KappaPoly>& g) {
  TensorTerm t{KappaPoly(Rational(1)), {}};
  for (const auto& b : blocks) t.factors.push_back(one_block_correction(b, g));
  TensorState state{t};
  for (const auto& K : tree) state = D_tensor(K, state);
  if (state.empty()) return KSeries(g.nvars(), g.prec());
  return P_product(state);
}

std::vector<BlockTree> block_trees(int nblocks) {
  std::vector<BlockTree> out;
  for (const auto& edges : hypertrees_on((1u << nblocks) - 1)) {
    BlockTree t;
    for (auto e : edges) {
      std::vector<int> k;
      for (int i = 0; i < nblocks; ++i)
        if (e & (1u << i)) k.push_back(i);
      t.push_back(k);
    }
    out.push_back(t);
  }
  return out;
}

KSeries build_H(int p, int prec) {
  if (p < 1 || p > 4) throw GuardError("H_p is built for p <= 4");
  GenFun<KappaPoly> g(p, prec);
  VarList all(p);
  std::iota(all.begin(), all.end(), 0);
  KSeries h = g.C(all);
  if (p == 1) return g.C1(0);
  for_each_set_partition(p, [&](const SetPartition& pi) {
    if (pi.is_finest()) return;
    BlockList blocks = pi.blocks();
    for (const auto& tree : block_trees(pi.num_blocks())) h += barC_tensor(blocks, tree, g);
  });
  return h;
}

template <class R>
Series<R> first_moment_series(int depth, const Ring<R>& ring) {
  std::vector<typename Series<R>::Term> raw;
  raw.push_back({ExpKey{0}, R(Rational(1))});
  for (int n = 1; n <= depth; ++n) raw.push_back({make_key({n}), value_in<R>(free_moments_p1(n), ring)});
  return Series<R>::from_terms(1, depth, std::move(raw));
}

template KSeries first_moment_series(int, const Ring<KappaPoly>&);
template QSeries first_moment_series(int, const Ring<Rational>&);

template <class R>
PolarSeries<R> functional_moments(int p, int depth, FunctionalForm form, const Ring<R>& ring) {
  if (p < 2 || p > 4) throw GuardError("functional relation implemented for 2 <= p <= 4");
  for (int slack = 2;; slack += 2) {
    int prec = depth + slack;
    GenFun<R> g(p, prec, ring);
    std::map<VarList, Series<R>> hs;
    auto weight_of = [&](const VarList& I) -> PolarSeries<R> {
      if (form == FunctionalForm::C) {
        PolarSeries<R> c(g.C(I));
        if (I.size() == 2) c += g.kernel(I[0], I[1]);
        return c;
      }
      auto it = hs.find(I);
      if (it == hs.end()) {
        int q = static_cast<int>(I.size());
        it = hs.emplace(I, to_ring<R>(build_H(q, prec), ring).relabeled(I, p)).first;
      }
      return PolarSeries<R>(it->second);
    };
    PolarSeries<R> total(Series<R>(p, kExact));
    for (const auto& tree : enumerate_trees(p, TreeKind::G)) {
      PolarSeries<R> f(g.one());
      for (auto e : tree.edges) {
        VarList I;
        for (int i = 0; i < p; ++i)
          if (e & (1u << i)) I.push_back(i);
        f = f * weight_of(I);
      }
      for (int i = 0; i < p; ++i) {
        int d = tree.degree(i);
        f = f * PolarSeries<R>(g.dYdX(i) * g.C1(i).unit_inverse().pow(d));
      }
      for (int i = 0; i < p; ++i) f = g.x_derivative_power(f, i, tree.degree(i) - 1);
      total += f;
    }
    Series<R> y_of_x = Series<R>::variable(1, 0) * first_moment_series<R>(prec, ring);
    PolarSeries<R> m = total.compose_all(y_of_x).reduced();
    if (m.prec() >= depth) return m;
  }
}

template PolarSeries<KappaPoly> functional_moments(int, int, FunctionalForm, const Ring<KappaPoly>&);
template PolarSeries<Rational> functional_moments(int, int, FunctionalForm, const Ring<Rational>&);

}  // namespace fc
