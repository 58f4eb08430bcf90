#include "freecum/trees.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>

#include "freecum/rational.hpp"

namespace fc {

int LabeledTree::degree(int i) const { return inner_degree(i) + leaves[i]; }

int LabeledTree::inner_degree(int i) const {
  int d = 0;
  for (auto e : edges) d += (e >> i) & 1u;
  return d;
}

int LabeledTree::num_black() const {
  return static_cast<int>(edges.size()) + std::accumulate(leaves.begin(), leaves.end(), 0);
}

bool LabeledTree::is_connected_tree() const {
  int excess = 0;
  std::vector<int> parent(p);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (auto e : edges) {
    excess += std::popcount(e) - 1;
    int first = std::countr_zero(e);
    for (int i = 0; i < p; ++i)
      if (e >> i & 1u) parent[find(i)] = find(first);
  }
  for (int i = 0; i < p; ++i)
    if (find(i) != find(0)) return false;
  return excess - p + 1 == 0;
}

bool LabeledTree::no_multiple_edges() const {
  for (std::size_t a = 0; a < edges.size(); ++a)
    for (std::size_t b = a + 1; b < edges.size(); ++b)
      if (std::popcount(edges[a] & edges[b]) >= 2) return false;
  return true;
}

std::string LabeledTree::to_string() const {
  std::string s = "[";
  for (std::size_t k = 0; k < edges.size(); ++k) {
    if (k) s += ',';
    s += '{';
    bool first = true;
    for (int i = 0; i < p; ++i)
      if (edges[k] >> i & 1u) {
        if (!first) s += ',';
        s += std::to_string(i + 1);
        first = false;
      }
    s += '}';
  }
  s += ']';
  if (std::any_of(leaves.begin(), leaves.end(), [](int l) { return l > 0; })) {
    s += " leaves ";
    for (int i = 0; i < p; ++i) {
      if (i) s += ',';
      s += std::to_string(leaves[i]);
    }
  }
  return s;
}

std::vector<std::vector<std::uint32_t>> hypertrees_on(std::uint32_t labels) {
  int p = std::popcount(labels);
  std::vector<std::vector<std::uint32_t>> out;
  if (p == 1) {
    out.emplace_back();
    return out;
  }
  // candidate hyperedges: subsets of labels with >= 2 elements
  std::vector<std::uint32_t> cand;
  for (std::uint32_t s = labels; s; s = (s - 1) & labels)
    if (std::popcount(s) >= 2) cand.push_back(s);
  std::sort(cand.begin(), cand.end());
  std::vector<std::uint32_t> cur;
  // a connected hypergraph with sum(|I|-1) = p-1 is a hypertree
  std::function<void(std::size_t, int)> rec = [&](std::size_t start, int budget) {
    if (budget == 0) {
      std::uint32_t reach = 1u << std::countr_zero(labels);
      bool grown = true;
      while (grown) {
        grown = false;
        for (auto e : cur)
          if ((e & reach) && (e & ~reach)) {
            reach |= e;
            grown = true;
          }
      }
      if (reach == labels) out.push_back(cur);
      return;
    }
    for (std::size_t k = start; k < cand.size(); ++k) {
      int w = std::popcount(cand[k]) - 1;
      if (w > budget) continue;
      bool ok = true;
      for (auto e : cur)
        if (std::popcount(e & cand[k]) >= 2) {
          ok = false;
          break;
        }
      if (!ok) continue;
      cur.push_back(cand[k]);
      rec(k + 1, budget - w);
      cur.pop_back();
    }
  };
  rec(0, p - 1);
  return out;
}

std::vector<LabeledTree> enumerate_trees(int p, TreeKind kind, int max_leaves) {
  if (p < 1) throw DomainError("trees need at least one white vertex");
  if (p > kMaxTreeP) throw GuardError("tree enumeration limited to p <= 6");
  std::vector<LabeledTree> out;
  for (auto& edges : hypertrees_on((1u << p) - 1)) {
    LabeledTree t;
    t.p = p;
    t.edges = edges;
    t.leaves.assign(p, 0);
    if (kind == TreeKind::G) {
      out.push_back(t);
      continue;
    }
    std::function<void(int, int)> rec = [&](int i, int budget) {
      if (i == p) {
        out.push_back(t);
        return;
      }
      for (int l = 0; l <= budget; ++l) {
        t.leaves[i] = l;
        rec(i + 1, budget - l);
      }
      t.leaves[i] = 0;
    };
    rec(0, max_leaves);
  }
  return out;
}

}  // namespace fc
