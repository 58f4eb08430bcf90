#include "freecum/maps.hpp"

#include <algorithm>
#include <numeric>

namespace fc {

namespace {
struct UnionFind {
  int parent[Permutation::kMaxN];
  explicit UnionFind(int n) { std::iota(parent, parent + n, 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};
}  // namespace

int count_components(const Permutation& a, const Permutation& b) {
  int n = a.size();
  UnionFind uf(n);
  int c = n;
  for (int i = 0; i < n; ++i) {
    c -= uf.unite(i, a(i));
    c -= uf.unite(i, b(i));
  }
  return c;
}

int genus(const Permutation& a, const Permutation& b) {
  int n = a.size();
  int chi = a.num_cycles() + b.num_cycles() + (a * b).num_cycles() - n;
  int twice = 2 * count_components(a, b) - chi;
  return twice / 2;
}

SetPartition faces(const BipartiteMap& m) { return orbit_partition(m.sigma1 * m.sigma2); }

SetPartition components(const BipartiteMap& m) {
  return orbit_partition(m.sigma1).join(orbit_partition(m.sigma2));
}

BipartiteMap split_white_vertex(const BipartiteMap& m, int d, int b) {
  int n = m.n();
  if (d == b || d < 0 || b < 0 || d >= n || b >= n) throw DomainError("split needs two distinct edges");
  auto cyc = m.sigma2.cycle_of(d);
  if (std::find(cyc.begin(), cyc.end(), b) == cyc.end()) throw DomainError("split edges are not on the same white vertex");
  return {m.sigma1, Permutation::transposition(n, d, b) * m.sigma2};
}

bool is_white_cut_vertex(const BipartiteMap& m, int v) {
  auto cyc = m.sigma2.cycle_of(v);
  int base = count_components(m.sigma1, m.sigma2);
  for (std::size_t x = 0; x < cyc.size(); ++x)
    for (std::size_t y = x + 1; y < cyc.size(); ++y) {
      auto s = split_white_vertex(m, cyc[x], cyc[y]);
      if (count_components(s.sigma1, s.sigma2) > base) return true;
    }
  return false;
}

bool has_white_cut_vertex(const BipartiteMap& m) {
  for (const auto& c : m.sigma2.cycles())
    if (c.size() > 1 && is_white_cut_vertex(m, c.front())) return true;
  return false;
}

SetPartition decompose_hypermap(const BipartiteMap& m, std::mt19937_64* rng) {
  BipartiteMap cur = m;
  for (;;) {
    int base = count_components(cur.sigma1, cur.sigma2);
    std::vector<std::pair<int, int>> moves;
    for (const auto& c : cur.sigma2.cycles())
      for (std::size_t x = 0; x < c.size(); ++x)
        for (std::size_t y = x + 1; y < c.size(); ++y) {
          auto s = split_white_vertex(cur, c[x], c[y]);
          if (count_components(s.sigma1, s.sigma2) > base) {
            moves.emplace_back(c[x], c[y]);
            if (!rng) break;
          }
        }
    if (moves.empty()) break;
    std::size_t pick = 0;
    if (rng) pick = std::uniform_int_distribution<std::size_t>(0, moves.size() - 1)(*rng);
    cur = split_white_vertex(cur, moves[pick].first, moves[pick].second);
  }
  return components(cur);
}

Integer count_maps_M(const IntegerPartition& lambda, const IntegerPartition& lambda2) {
  if (lambda.size() != lambda2.size()) throw DomainError("profiles of different sizes");
  if (lambda.size() > kMaxMapsM) throw GuardError("count_maps_M limited to n <= 9");
  auto g = gamma_of(lambda);
  long count = 0;
  for_each_in_class(lambda2, [&](const Permutation& t) {
    if (count_components(g, t) == 1 && genus(g, t) == 0) ++count;
  });
  return count;
}

Integer unicellular_count_closed(int n, const std::vector<int>& k) {
  long weight = 0, total = 0;
  Integer den = 1;
  for (std::size_t a = 0; a < k.size(); ++a) {
    if (k[a] < 0) throw DomainError("negative multiplicity");
    weight += static_cast<long>(a + 1) * k[a];
    total += k[a];
    den *= factorial(k[a]);
  }
  if (weight != n) throw DomainError("multiplicities do not sum to n");
  if (n + 1 - total < 0) return 0;
  return factorial(n) / (factorial(n + 1 - total) * den);
}

std::vector<SetPartition> noncrossing_partitions(int m) {
  if (m > kMaxNC) throw GuardError("non-crossing enumeration limited to n <= 10");
  std::vector<SetPartition> out;
  for_each_set_partition(m, [&](const SetPartition& p) {
    const auto& r = p.rgs();
    for (int a = 0; a < m; ++a)
      for (int b = a + 1; b < m; ++b) {
        if (r[a] == r[b]) continue;
        for (int c = b + 1; c < m; ++c) {
          if (r[c] != r[a]) continue;
          for (int d = c + 1; d < m; ++d)
            if (r[d] == r[b]) return;
        }
      }
    out.push_back(p);
  });
  return out;
}

Permutation increasing_cycles(const SetPartition& pi) {
  std::vector<int> image(pi.size());
  for (const auto& b : pi.blocks())
    for (std::size_t k = 0; k < b.size(); ++k) image[b[k]] = b[(k + 1) % b.size()];
  return Permutation::from_images(image);
}

std::vector<Permutation> enumerate_nc(const std::vector<int>& profile) {
  int n = std::accumulate(profile.begin(), profile.end(), 0);
  if (n > kMaxNC) throw GuardError("non-crossing enumeration limited to n <= 10");
  std::vector<std::vector<int>> images{std::vector<int>(n)};
  int start = 0;
  for (int len : profile) {
    auto ncs = noncrossing_partitions(len);
    std::vector<std::vector<int>> next;
    for (const auto& img : images)
      for (const auto& p : ncs) {
        auto t = increasing_cycles(p);
        auto im = img;
        for (int k = 0; k < len; ++k) im[start + k] = start + t(k);
        next.push_back(std::move(im));
      }
    images = std::move(next);
    start += len;
  }
  std::vector<Permutation> out;
  out.reserve(images.size());
  for (const auto& im : images) out.push_back(Permutation::from_images(im));
  return out;
}

std::vector<Permutation> enumerate_ns(const std::vector<int>& mu) {
  int n = std::accumulate(mu.begin(), mu.end(), 0);
  if (n > kMaxNS) throw GuardError("NS enumeration limited to total size <= 8");
  auto g = gamma_of_profile(mu);
  std::vector<Permutation> out;
  for_each_permutation(n, [&](const Permutation& nu) {
    if (genus(nu, g) != 0) return;
    if (count_components(nu, g) != 1) return;
    if (has_white_cut_vertex({nu, g})) return;
    out.push_back(nu);
  });
  return out;
}

AdjacencyMatrix adjacency_matrix(const Permutation& nu, const std::vector<int>& mu) {
  int n = nu.size();
  std::vector<int> white(n);
  int start = 0;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    for (int k = 0; k < mu[i]; ++k) white[start + k] = static_cast<int>(i);
    start += mu[i];
  }
  auto bcycles = nu.cycles();
  std::vector<int> black(n);
  for (std::size_t c = 0; c < bcycles.size(); ++c)
    for (int e : bcycles[c]) black[e] = static_cast<int>(c);
  std::vector<int> label(bcycles.size(), -1);
  int next = 0;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    // edges increase within a white vertex, so the first hit is the smallest connecting edge
    for (int e = 0; e < n; ++e)
      if (white[e] == static_cast<int>(i) && label[black[e]] < 0) label[black[e]] = next++;
  }
  AdjacencyMatrix a(mu.size(), std::vector<int>(bcycles.size(), 0));
  for (int e = 0; e < n; ++e) ++a[white[e]][label[black[e]]];
  return a;
}

std::map<AdjacencyMatrix, Integer> ns_adjacency_census(const std::vector<int>& mu, int r) {
  std::map<AdjacencyMatrix, Integer> out;
  for (const auto& nu : enumerate_ns(mu)) {
    if (r > 0 && nu.num_cycles() != r) continue;
    out[adjacency_matrix(nu, mu)] += 1;
  }
  return out;
}

}  // namespace fc
