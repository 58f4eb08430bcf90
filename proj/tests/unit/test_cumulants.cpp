#include "doctest.h"

#include "freecum/cumulants.hpp"

using namespace fc;

namespace {

KappaPoly k(std::vector<int> idx) { return KappaPoly::kappa(idx); }

}  // namespace

TEST_CASE("classical moment-cumulant inversion") {
  std::vector<Rational> m{Rational(1), Rational(3), Rational(-2), Rational(5) / Rational(7), Rational(11)};
  auto c = classical_cumulants(m);
  CHECK(c[1] == 2);  // variance
  CHECK(classical_moments(c) == m);
}

TEST_CASE("first-order free moments") {
  CHECK(free_moments_p1(1) == k({1}));
  CHECK(free_moments_p1(2) == k({2}) + k({1}) * k({1}));
  CHECK(free_moments_p1(3) == k({3}) + k({2}) * k({1}).scaled(Rational(3)) + k({1}) * k({1}) * k({1}));
  // number of terms, weighted, is the Catalan number
  Rational total = free_moments_p1(6).evaluate([](KappaId) { return Rational(1); });
  CHECK(total == 132);
}

TEST_CASE("second-order moment of two single cumulants") {
  // the one-cycle permutations contribute first-order cumulants
  CHECK(higher_moments_bruteforce({1, 1}) == k({1, 1}) + k({2}));
  CHECK(higher_moments_bruteforce({2, 1}) ==
        k({2, 1}) + (k({1}) * k({1, 1})).scaled(2) + k({3}).scaled(2) + (k({2}) * k({1})).scaled(2));
}

TEST_CASE("higher-order moment routes agree") {
  for (const Profile& l : std::vector<Profile>{{2, 2}, {3, 1}, {2, 1, 1}, {3, 2}, {1, 1, 1, 1}}) {
    KappaPoly b = higher_moments_bruteforce(l);
    CHECK(b == higher_moments_treeformula(l));
    CHECK(b == higher_moments_analytic(l));
    if (l.size() <= 3) CHECK(b == moments_via_factorized(l));
  }
}

TEST_CASE("cumulants from moments invert the moment map") {
  MomentLookup<KappaPoly> phi = [](const Profile& p) { return higher_moments_bruteforce(p); };
  for (const Profile& l : std::vector<Profile>{{2}, {1, 1}, {2, 1}, {2, 2}, {1, 1, 1}, {2, 1, 1}}) {
    CHECK(higher_cumulants_from_moments<KappaPoly>(l, phi) == k(l));
    CHECK(higher_cumulants_cmss<KappaPoly>(l, phi) == k(l));
  }
}

TEST_CASE("tables serialize") {
  KappaTable t = moment_table(3, 2);
  CHECK(t.contains({2, 1}));
  KappaTable back = table_from_json(table_to_json(t));
  CHECK(back.entries == t.entries);
  CHECK(table_to_csv(t).rfind("profile,monomial,value", 0) == 0);
  CHECK_THROWS_AS(table_from_json("{\"entries\":[{\"profile\":[0],\"value\":\"1\"}]}"), DomainError);
}

TEST_CASE("degree condition split") {
  SplitCheck s = check_degree_split(4);
  CHECK(s.tuples > 0);
  CHECK(s.mismatches == 0);
}
