#include "doctest.h"

#include "freecum/partition.hpp"
#include "freecum/perm.hpp"
#include "freecum/rational.hpp"
#include "freecum/trees.hpp"
#include "freecum/maps.hpp"

using namespace fc;

TEST_CASE("composition applies the right factor first") {
  Permutation s = Permutation::parse("(1 2)", 3), t = Permutation::parse("(2 3)", 3);
  Permutation st = s * t;
  CHECK(st(1) == s(t(1)));
  CHECK(st.to_string() == "(1 2 3)");
  CHECK((st * st.inverse()).is_identity());
}

TEST_CASE("cycles, parsing and cycle type") {
  Permutation p = Permutation::parse("(1 3)(2 5 6)(4)");
  CHECK(p.size() == 6);
  CHECK(p.num_cycles() == 3);
  CHECK(p.cycle_type().to_string() == "3+2+1");
  CHECK(Permutation::parse(p.to_string(), 6) == p);
  CHECK_THROWS_AS(Permutation::parse("(1 1)"), DomainError);
}

TEST_CASE("integer partitions") {
  CHECK(integer_partitions(6).size() == 11);
  CHECK(IntegerPartition::parse("3,1,2").to_string() == "3+2+1");
  int total = 0;
  for (const auto& p : integer_partitions(7)) total += p.size() == 7;
  CHECK(total == 15);
}

TEST_CASE("set partitions: Bell numbers, lattice operations, Moebius") {
  for (int n = 1; n <= 7; ++n) CHECK(Integer(static_cast<long>(enumerate_set_partitions(n).size())) == bell(n));
  SetPartition a = SetPartition::parse("{1,2|3|4}"), b = SetPartition::parse("{1|2,3|4}");
  CHECK(a.join(b).to_string() == "{1,2,3|4}");
  CHECK(a.meet(b).is_finest());
  CHECK(a.leq(a.join(b)));
  // mu(0_n, 1_n) = (-1)^{n-1} (n-1)!
  for (int n = 1; n <= 6; ++n)
    CHECK(mobius(SetPartition::finest(n), SetPartition::coarsest(n)) == Integer(sign_pow(n - 1)) * factorial(n - 1));
}

TEST_CASE("non-crossing partitions are counted by Catalan numbers") {
  for (int n = 1; n <= 8; ++n) CHECK(Integer(static_cast<long>(noncrossing_partitions(n).size())) == catalan(n));
}

TEST_CASE("hypertree counts") {
  CHECK(enumerate_trees(2, TreeKind::G).size() == 1);
  CHECK(enumerate_trees(3, TreeKind::G).size() == 4);
  CHECK(enumerate_trees(4, TreeKind::G).size() == 29);
  for (int p = 1; p <= 5; ++p)
    for (const auto& t : enumerate_trees(p, TreeKind::G)) {
      CHECK(t.is_connected_tree());
      int deg = 0, sizes = 0;
      for (int i = 0; i < p; ++i) deg += t.degree(i);
      for (auto e : t.edges) sizes += __builtin_popcount(e);
      CHECK(deg == sizes);
    }
}

TEST_CASE("decorated trees carry leaf counts") {
  auto ts = enumerate_trees(2, TreeKind::T, 1);
  // the single edge {1,2}, with or without one leaf on either vertex
  CHECK(ts.size() == 3);
}
