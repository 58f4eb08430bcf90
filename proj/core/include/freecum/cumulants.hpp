#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "freecum/kappa.hpp"
#include "freecum/partition.hpp"
#include "freecum/perm.hpp"

namespace fc {

// Profiles are multisets of positive integers, canonically sorted decreasingly.
using Profile = std::vector<int>;
Profile canonical_profile(std::vector<int> p);

constexpr int kMaxMomentN = 7;
constexpr int kMaxFreeMomentN = 10;
constexpr int kMaxCmssN = 5;
constexpr int kMaxFactorizedN = 6;

// Moment or cumulant values indexed by profile.
template <class R>
struct ProfileTable {
  std::map<Profile, R> entries;
  const R& at(const Profile& p) const;
  bool contains(const Profile& p) const { return entries.count(canonical_profile(p)) != 0; }
  void set(const Profile& p, R v) { entries[canonical_profile(p)] = std::move(v); }
};

using KappaTable = ProfileTable<KappaPoly>;
using RationalTable = ProfileTable<Rational>;

// {"entries":[{"profile":[2,1],"value":"3*k[2]*k[1] + k[2,1]"}]}
std::string table_to_json(const KappaTable& t);
KappaTable table_from_json(const std::string& text);
std::string table_to_json(const RationalTable& t);
RationalTable rational_table_from_json(const std::string& text);
// rows: profile, monomial, value
std::string table_to_csv(const KappaTable& t);

// k_n = sum_pi (-1)^{#pi-1} (#pi-1)! prod m_|G|, with m[0] = m_1.
template <class R>
std::vector<R> classical_cumulants(const std::vector<R>& moments);
template <class R>
std::vector<R> classical_moments(const std::vector<R>& cumulants);

// phi_1(b^n) as a sum over non-crossing partitions.
KappaPoly free_moments_p1(int n);

// kappa(pi', tau) = prod over blocks of k[cycle sizes of tau inside the block]
KappaPoly kappa_of(const SetPartition& pi, const Permutation& tau);

// phi(1_n, sigma) by exhaustive enumeration of tau and pi'.
KappaPoly moment_bruteforce(const Permutation& sigma);
KappaPoly higher_moments_bruteforce(const Profile& lambda);
// tree, coarsening and attribution sum with planar map counts
KappaPoly higher_moments_treeformula(const Profile& lambda);
// hypertree sum with factorial weights and the expanded double-pole kernel
KappaPoly higher_moments_analytic(const Profile& lambda);
// sum over products of non-crossing permutations with block corrections
KappaPoly moments_via_factorized(const Profile& lambda);

// Lookup of phi_p(b^{l_1},...,b^{l_p}) by profile.
template <class R>
using MomentLookup = std::function<R(const Profile&)>;

// phi(pi, tau) from the one-block values
template <class R>
R multiplicative(const SetPartition& pi, const Permutation& tau, const MomentLookup<R>& phi);

// the Gamma-kernel inverse
template <class R>
R higher_cumulants_from_moments(const Profile& lambda, const MomentLookup<R>& phi);
// the double sum with the Moebius function of the convolution
template <class R>
R higher_cumulants_cmss(const Profile& lambda, const MomentLookup<R>& phi);

// Every profile of size <= max_n with at most max_p parts.
std::vector<Profile> profiles_upto(int max_n, int max_p);
KappaTable moment_table(int max_n, int max_p);

// Exhaustive check of the three-condition split of the dot-product degree condition.
struct SplitCheck {
  long tuples = 0;
  long mismatches = 0;
};
SplitCheck check_degree_split(int n);

}  // namespace fc
