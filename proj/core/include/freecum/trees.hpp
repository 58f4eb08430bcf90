#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fc {

// Labeled bipartite tree: white vertices 0..p-1, black vertices are the hyperedges.
// Black leaves ({i} hyperedges) are stored as a count per white vertex.
struct LabeledTree {
  int p = 1;
  std::vector<std::uint32_t> edges;  // |I| >= 2, sorted
  std::vector<int> leaves;           // size p

  int degree(int i) const;           // all black neighbours, leaves included
  int inner_degree(int i) const;     // neighbours with |I| >= 2
  int num_black() const;
  bool is_connected_tree() const;    // both invariants of the type
  bool no_multiple_edges() const;
  std::string to_string() const;     // "[{1,2},{2,3}] leaves 0,1,0"

  bool operator==(const LabeledTree&) const = default;
};

enum class TreeKind { G, T };

constexpr int kMaxTreeP = 6;

// kind G: all hypertrees (no black leaves). kind T: G-skeletons decorated with
// at most max_leaves black leaves in total.
std::vector<LabeledTree> enumerate_trees(int p, TreeKind kind, int max_leaves = 0);

// hypertrees on the white vertex set `labels` (bitmask), edges expressed on those labels
std::vector<std::vector<std::uint32_t>> hypertrees_on(std::uint32_t labels);

}  // namespace fc
