#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <vector>

#include "freecum/perm.hpp"

namespace fc {

// Bipartite map: black vertices are the cycles of sigma1, white vertices those of sigma2.
struct BipartiteMap {
  Permutation sigma1;
  Permutation sigma2;

  int n() const { return sigma1.size(); }
};

int count_components(const Permutation& a, const Permutation& b);
int genus(const Permutation& a, const Permutation& b);
inline int genus(const BipartiteMap& m) { return genus(m.sigma1, m.sigma2); }
SetPartition faces(const BipartiteMap& m);
SetPartition components(const BipartiteMap& m);

// Splits the white vertex through d and b: sigma2 -> (d b) sigma2, i.e. apply sigma2 first.
BipartiteMap split_white_vertex(const BipartiteMap& m, int d, int b);
// v is any edge of the white vertex
bool is_white_cut_vertex(const BipartiteMap& m, int v);
bool has_white_cut_vertex(const BipartiteMap& m);

// Partition of the edges into non-separable hypermap components. With an rng,
// the split applied at each step is chosen at random among the disconnecting ones.
SetPartition decompose_hypermap(const BipartiteMap& m, std::mt19937_64* rng = nullptr);

constexpr int kMaxMapsM = 9;
constexpr int kMaxNC = 10;
constexpr int kMaxNS = 8;

// card{tau of type lambda2 : g(gamma_lambda, tau) = 0, connected}
Integer count_maps_M(const IntegerPartition& lambda, const IntegerPartition& lambda2);
// n! / ((n + 1 - sum k) ! prod k_a!), k[a-1] = k_a
Integer unicellular_count_closed(int n, const std::vector<int>& k);

// non-crossing permutations tau_1 x ... x tau_p under the cycles of gamma_profile
std::vector<Permutation> enumerate_nc(const std::vector<int>& profile);
// all non-crossing partitions of {0..m-1}
std::vector<SetPartition> noncrossing_partitions(int m);
// permutation with the blocks of pi as increasing cycles
Permutation increasing_cycles(const SetPartition& pi);

// planar connected maps (nu, gamma_mu) with no white cut-vertex
std::vector<Permutation> enumerate_ns(const std::vector<int>& mu);

using AdjacencyMatrix = std::vector<std::vector<int>>;  // rows: white vertices, columns: black vertices
AdjacencyMatrix adjacency_matrix(const Permutation& nu, const std::vector<int>& mu);
// counts of NS(mu) elements with r black vertices by labeled adjacency matrix (r = 0: all r)
std::map<AdjacencyMatrix, Integer> ns_adjacency_census(const std::vector<int>& mu, int r);

}  // namespace fc
