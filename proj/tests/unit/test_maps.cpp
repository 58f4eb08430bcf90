#include "doctest.h"

#include "freecum/maps.hpp"
#include "freecum/partition.hpp"

using namespace fc;

TEST_CASE("genus of small maps") {
  Permutation g = Permutation::parse("(1 2 3 4)");
  CHECK(genus(g, Permutation::parse("(1 2)(3 4)", 4)) == 0);
  CHECK(genus(g, Permutation::parse("(1 3)(2 4)", 4)) == 1);
}

TEST_CASE("white vertex split") {
  BipartiteMap m{Permutation::parse("(1 2)(3 4)"), Permutation::parse("(1 2 3 4)")};
  BipartiteMap s = split_white_vertex(m, 0, 2);
  CHECK(count_components(s.sigma1, s.sigma2) == 2);
  CHECK(is_white_cut_vertex(m, 0));
}

TEST_CASE("non-separable census") {
  CHECK(enumerate_ns({3}).size() == 1);
  CHECK(enumerate_ns({1, 1}).size() == 1);
  CHECK(enumerate_ns({1, 1, 1}).size() == 2);
  CHECK_THROWS_AS(enumerate_ns({5, 4}), GuardError);
}

TEST_CASE("NS enumeration equals the definitional filter over S_n") {
  for (const std::vector<int>& mu : std::vector<std::vector<int>>{{2, 1}, {2, 2}, {1, 1, 2}, {3, 2}, {1, 1, 1, 1}}) {
    int n = 0;
    for (int x : mu) n += x;
    Permutation g = gamma_of_profile(mu);
    std::vector<Permutation> expect;
    for_each_permutation(n, [&](const Permutation& nu) {
      BipartiteMap m{nu, g};
      if (genus(m) == 0 && count_components(nu, g) == 1 && !has_white_cut_vertex(m)) expect.push_back(nu);
    });
    auto got = enumerate_ns(mu);
    std::sort(got.begin(), got.end());
    std::sort(expect.begin(), expect.end());
    CHECK(got == expect);
  }
}

TEST_CASE("decomposition of the six-edge example is stable") {
  BipartiteMap m{Permutation::parse("(1 3)(2 5 6)(4)"), Permutation::parse("(1 3 5 4 2)(6)")};
  SetPartition ref = decompose_hypermap(m);
  CHECK(ref.num_blocks() == 3);
  CHECK(ref.to_string() == "{1,3|2,5,6|4}");
  for (std::uint64_t s = 0; s < 10; ++s) {
    std::mt19937_64 rng(s);
    CHECK(decompose_hypermap(m, &rng) == ref);
  }
}

TEST_CASE("planar map counts") {
  CHECK(count_maps_M(IntegerPartition({1, 1}), IntegerPartition({2})) == 1);
  for (int n = 1; n <= 7; ++n) {
    Integer s = 0;
    for (const auto& l : integer_partitions(n)) s += count_maps_M(IntegerPartition({n}), l);
    CHECK(s == catalan(n));
  }
  // unicellular closed form against enumeration
  for (int n = 1; n <= 6; ++n)
    for (const auto& l : integer_partitions(n)) {
      std::vector<int> k(n, 0);
      for (int part : l.parts()) ++k[part - 1];
      CHECK(count_maps_M(IntegerPartition({n}), l) == unicellular_count_closed(n, k));
    }
}

TEST_CASE("adjacency census adds up") {
  auto census = ns_adjacency_census({2, 2}, 0);
  Integer total = 0;
  for (const auto& [m, k] : census) total += k;
  CHECK(total == Integer(static_cast<long>(enumerate_ns({2, 2}).size())));
}
