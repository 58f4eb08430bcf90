#pragma once

#include <map>
#include <vector>

#include "freecum/perm.hpp"

namespace fc {

// Coefficients of N^{-k}, kept for k <= depth.
struct InverseNSeries {
  std::map<int, Rational> coeffs;
  int depth = 0;

  Rational at(int k) const;
  InverseNSeries operator*(const InverseNSeries& o) const;
  InverseNSeries& operator+=(const InverseNSeries& o);
  InverseNSeries scaled(const Rational& c) const;
  bool operator==(const InverseNSeries& o) const;
};

// (-1)^{#a+n} (2n+#a-3)!/(2n)! prod_p [(2p)!/(p!(p-1)!)]^{d_p}
Rational gamma_closed(const IntegerPartition& alpha);
// generic multiset version, used by tree formulas
Rational gamma_closed(const std::vector<int>& sizes);

constexpr int kMaxHurwitzN = 6;
constexpr int kMaxConstellationN = 5;

// transitive monotone transposition factorizations of a fixed permutation of type alpha
// with l = 2g + n - 2 + #alpha factors
Integer monotone_hurwitz(const IntegerPartition& alpha, int g);
// monotone factorizations of nu with l factors whose join of supports is pi_bar
Integer monotone_count(const SetPartition& pi_bar, const Permutation& nu, int l);

// k-tuples of non-identity permutations with product nu, join of orbits pi_bar, total length l
Integer constellation_count(const SetPartition& pi_bar, const Permutation& nu, int l, int k);

// sum_k (-1)^k M(pi_bar, nu; l, k), straight from the constellation counts
Rational gamma_l_direct(const SetPartition& pi_bar, const Permutation& nu, int l);
// block-wise convolution over the blocks of pi_bar
Rational gamma_l(const SetPartition& pi_bar, const Permutation& nu, int l);
// connected coefficient for a single block
Rational gamma_l_connected(const Permutation& nu, int l);

// l(nu, pi, pi_t) = n - #nu + 2(#pi_t - #pi); constraint #pi_bar = #nu - #pi_t + #pi
int min_l(const Permutation& nu, const SetPartition& pi, const SetPartition& pi_t);

InverseNSeries weingarten_series(const Permutation& nu, int depth);

// Gram-matrix inversion over Q(N), n <= 3. Returns numerator and denominator
// coefficient lists in powers of N together with the expansion.
struct RationalFunctionN {
  std::vector<Rational> num;  // num[k] coefficient of N^k
  std::vector<Rational> den;
  InverseNSeries expand(int depth) const;
};
RationalFunctionN weingarten_oracle(const Permutation& nu);

// gamma_{#s - 2#pi + n}(pi, s)
Rational mobius_mu(const SetPartition& pi, const Permutation& s);

// sum over pi2 >= Pi(nu) with pi_t v pi2 = pi and L[pi2, pi_t; Pi(nu)] = 0 of prod_G gamma(nu|_G)
Rational big_gamma(const Permutation& nu, const SetPartition& pi, const SetPartition& pi_t);
// the same kernel (pi = 1_n) written as a sum over trees with injective cycle attributions
Rational big_gamma_tree(const Permutation& nu, const SetPartition& pi_t);

}  // namespace fc
