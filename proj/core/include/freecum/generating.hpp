#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "freecum/cumulants.hpp"
#include "freecum/series.hpp"

namespace fc {

using VarList = std::vector<int>;
using BlockList = std::vector<VarList>;
// Tree over the blocks of a partition: each blue vertex lists the block indices it joins.
using BlockTree = std::vector<std::vector<int>>;

// Every builder works in a fixed space of nvars variables Y_0..Y_{nvars-1}, starting
// from C_1 known to degree prec. Results carry the precision they are actually known to.
template <class R>
class GenFun {
 public:
  GenFun(int nvars, int prec, Ring<R> ring = {});

  int nvars() const { return nvars_; }
  int prec() const { return prec_; }
  const Ring<R>& ring() const { return ring_; }

  Series<R> one() const { return Series<R>::constant(nvars_, R(Rational(1))); }
  Series<R> var(int i) const { return Series<R>::variable(nvars_, i); }

  // 1 + sum k_a Y_i^a
  const Series<R>& C1(int i) const;
  // sum over a_j >= 1 of k[a] prod Y^a; for one variable this is C1 - 1
  const Series<R>& C(const VarList& vars) const;
  // E = C1 - Y C1' = C1^2 dX/dY
  const Series<R>& E(int i) const;
  // X = Y / C1(Y)
  const Series<R>& X(int i) const;
  const Series<R>& dXdY(int i) const;
  const Series<R>& dYdX(int i) const;
  // X d/dX = w Y d/dY with w = C1 / E
  const Series<R>& w(int i) const;

  // sum over i_j >= 1 of k[sum i] prod Y^i, by definition and by the closed form
  Series<R> hatC_def(const VarList& vars) const;
  const Series<R>& hatC(const VarList& vars) const;
  // k[sum over each block] version
  Series<R> hatC_pi_def(const BlockList& blocks) const;
  Series<R> hatC_pi(const BlockList& blocks) const;
  // 1 - hatC(Y_a, Y_b)
  const Series<R>& Q(int a, int b) const;

  // Y_a Y_b / (Y_a - Y_b)^2
  PolarSeries<R> kernel(int a, int b) const { return PolarSeries<R>::kernel(nvars_, a, b); }
  // 1 / (Y_a - Y_b)^e
  PolarSeries<R> pole(int a, int b, int e = 1) const { return PolarSeries<R>::pole(nvars_, a, b, e); }

  Series<R> tildeC2_log(int a, int b) const;
  Series<R> tildeC2_xform(int a, int b) const;
  Series<R> tildeC2_polefree(int a, int b) const;
  const Series<R>& tildeC2(int a, int b) const;  // cached log form
  // tilde C2 - kernel = -K E_a E_b / Q^2
  PolarSeries<R> circC2(int a, int b) const;

  Series<R> tildeC3_gen(int a, int b, int c) const;
  Series<R> tildeC3_alt(int a, int b, int c) const;
  Series<R> tildeC3_simple(int a, int b, int c) const;
  const Series<R>& tildeC3(int a, int b, int c) const;  // cached general form

  // bar C_{p,{a,b}} on the variables `vars` (which contain a and b)
  Series<R> barC_ab(const VarList& vars, int a, int b) const;
  // bar C_{4,{1,2}{3,4}}
  Series<R> barC_22(int v1, int v2, int v3, int v4) const;
  // bar C_{4,{1}{2}{3,4},T}, the tree with blue vertices {1}{3,4} and {2}{3,4}
  Series<R> barC_11T(int v1, int v2, int v3, int v4) const;
  // bar C for the blocks {v1,v2,v3}{v4}, from the simple third-order form
  Series<R> barC_31(int v1, int v2, int v3, int v4) const;

  // X_i^k d^k/dX_i^k in Y coordinates
  PolarSeries<R> x_derivative_power(const PolarSeries<R>& f, int i, int k) const;

  // (num / den) where both vanish on Y_a = Y_b
  static Series<R> ratio_dd(const Series<R>& num, const Series<R>& den, int a, int b);
  // prod over vars of Y d/dY
  static PolarSeries<R> theta_all(PolarSeries<R> f, const VarList& vars);

 private:
  int nvars_;
  int prec_;
  Ring<R> ring_;
  mutable std::map<std::pair<int, VarList>, Series<R>> cache_;
  const Series<R>& cached(int kind, const VarList& key, const std::function<Series<R>()>& make) const;
  R kappa(const std::vector<int>& idx) const { return ring_.kappa(idx); }
};

extern template class GenFun<KappaPoly>;
extern template class GenFun<Rational>;

// A symbolic series carried to the ring of R.
template <class R>
Series<R> to_ring(const KSeries& s, const Ring<R>& ring);

// Coefficient oracles from non-separable hypermap enumeration (symbolic).
// sum over nu in NS(m,n) of prod k[cycle sizes]
KappaPoly tilde_kappa_ns(const std::vector<int>& mu);
// the closed coefficient formula with weight i_1 n
KappaPoly tilde_kappa_formula(int m, int n);
// tilde C_p on variables 0..p-1 of an nvars space, every coefficient of degree <= prec
KSeries tildeC_from_ns(int p, int nvars, int prec);
// bar C_{|I|, blocks, tree} by injective attributions on NS maps
KSeries barC_from_ns(const BlockList& blocks, const BlockTree& tree, int nvars, int prec);
// bar C by the tensor operators applied to the one-block corrections
KSeries barC_tensor(const BlockList& blocks, const BlockTree& tree, const GenFun<KappaPoly>& g);
// trees of the correction sum: hypertrees on the blocks
std::vector<BlockTree> block_trees(int nblocks);

// H_p on variables 0..p-1: C_p plus all corrections, built symbolically
KSeries build_H(int p, int prec);

enum class FunctionalForm { C, H };
// M_p(X) from the tree sum with Y = X M_1(X), as a polar series in X (for p = 2 and the
// C form the double pole X1 X2/(X1-X2)^2 is included).
template <class R>
PolarSeries<R> functional_moments(int p, int depth, FunctionalForm form, const Ring<R>& ring);
// M_1 from the non-crossing moment table
template <class R>
Series<R> first_moment_series(int depth, const Ring<R>& ring);

}  // namespace fc
