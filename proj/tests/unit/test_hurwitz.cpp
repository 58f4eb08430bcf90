#include "doctest.h"

#include "freecum/hurwitz.hpp"

using namespace fc;

TEST_CASE("genus-zero closed form") {
  CHECK(gamma_closed(IntegerPartition({1})) == 1);
  CHECK(gamma_closed(IntegerPartition({2})) == -1);
  CHECK(gamma_closed(IntegerPartition({3})) == 2);
  CHECK(gamma_closed(IntegerPartition({4})) == -5);
  for (int n = 1; n <= 5; ++n)
    for (const auto& a : integer_partitions(n))
      CHECK(gamma_closed(a) == Rational(sign_pow(a.length() + n)) * Rational(monotone_hurwitz(a, 0)));
}

TEST_CASE("Weingarten expansion") {
  InverseNSeries w = weingarten_series(Permutation::parse("(1 2)"), 8);
  CHECK(w.at(2) == 0);
  CHECK(w.at(3) == -1);
  CHECK(w.at(4) == 0);
  CHECK(w.at(5) == -1);
  InverseNSeries id = weingarten_series(Permutation::parse("(1)(2)"), 8);
  CHECK(id.at(2) == 1);
  CHECK(id.at(4) == 1);
  for (const char* s : {"(1)", "(1 2 3)", "(1 2)(3)"}) {
    Permutation nu = Permutation::parse(s);
    CHECK(weingarten_series(nu, nu.size() + 6) == weingarten_oracle(nu).expand(nu.size() + 6));
  }
}

TEST_CASE("gamma_l sign and block convolution") {
  for (int n = 1; n <= 3; ++n)
    for_each_permutation(n, [&](const Permutation& nu) {
      for (const auto& pb : enumerate_set_partitions(n, orbit_partition(nu)))
        for (int l = 0; l <= n + 2; ++l) {
          Rational a = gamma_l(pb, nu, l);
          CHECK(a == gamma_l_direct(pb, nu, l));
          CHECK(sign_pow(nu.num_cycles() + n) * a >= 0);
        }
    });
}

TEST_CASE("Gamma kernel: lattice sum equals the tree sum") {
  for (int n = 1; n <= 4; ++n)
    for_each_permutation(n, [&](const Permutation& nu) {
      for (const auto& pt : enumerate_set_partitions(n, orbit_partition(nu)))
        CHECK(big_gamma(nu, SetPartition::coarsest(n), pt) == big_gamma_tree(nu, pt));
    });
}
