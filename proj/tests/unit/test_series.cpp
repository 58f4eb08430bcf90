#include "doctest.h"

#include "freecum/series.hpp"

using namespace fc;

namespace {

QSeries geometric(int nvars, int i, int prec) {
  QSeries s(nvars, prec);
  for (int k = 0; k <= prec; ++k) {
    std::vector<int> e(nvars, 0);
    e[i] = k;
    s += QSeries::monomial(nvars, e, Rational(1), prec);
  }
  return s;
}

}  // namespace

TEST_CASE("products, inverses and precision") {
  QSeries y = QSeries::variable(1, 0);
  QSeries one_minus = (QSeries::constant(1, Rational(1)) - y).truncated(8);
  QSeries inv = one_minus.unit_inverse();
  CHECK(inv.prec() == 8);
  CHECK(inv == geometric(1, 0, 8));
  CHECK((inv * one_minus).truncated(8) == QSeries::constant(1, Rational(1), 8));
  QSeries sq = inv.pow(2);
  for (int k = 0; k <= 8; ++k) CHECK(sq.coefficient(std::vector<int>{k}) == k + 1);
}

TEST_CASE("theta and derivative") {
  QSeries g = geometric(2, 1, 6);
  QSeries t = g.theta(1);
  CHECK(t.prec() == 6);
  for (int k = 0; k <= 6; ++k) CHECK(t.coefficient(std::vector<int>{0, k}) == k);
  CHECK(g.deriv(1).prec() == 5);
  CHECK(g.theta(0).is_zero());
}

TEST_CASE("divided differences") {
  QSeries a = QSeries::variable(2, 0), b = QSeries::variable(2, 1);
  QSeries q = (a.pow(3) - b.pow(3)).divided_difference(0, 1);
  CHECK(q == a * a + a * b + b * b);
  CHECK_FALSE((a.pow(2) + b).try_divided_difference(0, 1).has_value());
  CHECK_THROWS_AS((a + b).divided_difference(0, 1), DomainError);
}

TEST_CASE("composition keeps every coefficient that is determined") {
  // 1/(1-Y) at Y = Z/(1-Z) is (1-Z)/(1-2Z)
  QSeries f = geometric(1, 0, 7);
  QSeries g = geometric(1, 0, 7) - QSeries::constant(1, Rational(1));
  QSeries h = f.compose(0, g);
  CHECK(h.prec() == 7);
  CHECK(h.coefficient(std::vector<int>{0}) == 1);
  for (int k = 1; k <= 7; ++k) CHECK(h.coefficient(std::vector<int>{k}) == Rational(1 << (k - 1)));

  // a factor Y^3 in f leaves the composition known three degrees further than f's remainder
  QSeries f3 = QSeries::monomial(1, {3}, Rational(1), 4);
  QSeries g3 = QSeries::variable(1, 0, 2) + QSeries::monomial(1, {2}, Rational(1), 2);
  QSeries h3 = f3.compose(0, g3);
  CHECK(h3.prec() == 4);
  CHECK(h3.coefficient(std::vector<int>{4}) == 3);

  CHECK_THROWS_AS(f.compose(0, QSeries::constant(1, Rational(1))), DomainError);
}

TEST_CASE("polar series carry the pole degree") {
  PolarSeries<Rational> k = PolarSeries<Rational>::kernel(2, 0, 1);
  CHECK(k.pole_degree() == 2);
  PolarSeries<Rational> d = PolarSeries<Rational>(difference_power<Rational>(2, 0, 1, 2));
  CHECK((k * d).reduced().to_series() == QSeries::variable(2, 0) * QSeries::variable(2, 1));
  CHECK_THROWS_AS(k.to_series(), DomainError);
}

TEST_CASE("text form round trip") {
  KSeries s = KSeries::monomial(2, {2, 1}, KappaPoly::kappa({2, 1}).scaled(Rational(3) / Rational(2)), 5) +
              KSeries::monomial(2, {1, 0}, KappaPoly::kappa({1}) * KappaPoly::kappa({1}), 5);
  std::string text = dump_series(s);
  CHECK(text.rfind("# D=5 vars=Y1,Y2", 0) == 0);
  CHECK(parse_series(text) == s);
}

TEST_CASE("kappa polynomials") {
  KappaPoly p = KappaPoly::parse("3*k[2]*k[1] + k[2,1] - 1/2");
  CHECK(KappaPoly::parse(p.to_string()) == p);
  CHECK(KappaPoly::kappa({1, 2}) == KappaPoly::kappa({2, 1}));
  KappaPoly d = D_operator({KappaPoly::kappa({2}), KappaPoly::kappa({1})});
  CHECK(d == KappaPoly::kappa({2, 1}));
  CHECK(p.evaluate([](KappaId) { return Rational(1); }) == Rational(7) / Rational(2));
}
