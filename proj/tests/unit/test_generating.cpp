#include "doctest.h"

#include <algorithm>

#include "freecum/generating.hpp"

using namespace fc;

namespace {

bool agree(const KSeries& a, const KSeries& b, int d) { return (a - b).truncated(d).is_zero(); }

KappaPoly k(std::vector<int> idx) { return KappaPoly::kappa(idx); }

}  // namespace

TEST_CASE("first-order series") {
  GenFun<KappaPoly> g(1, 6);
  CHECK(g.C1(0).coefficient(std::vector<int>{3}) == k({3}));
  // X = Y / C1 and E = C1^2 dX/dY
  CHECK(agree(g.X(0) * g.C1(0), g.var(0), 6));
  CHECK(agree(g.E(0), g.C1(0) * g.C1(0) * g.dXdY(0), 5));
  CHECK(agree(g.dXdY(0) * g.dYdX(0), g.one(), 5));
  // Y = X M_1(X) inverts X = Y / C1(Y)
  KSeries y_of_x = g.var(0) * first_moment_series<KappaPoly>(6, {});
  CHECK(agree(g.X(0).compose(0, y_of_x), g.var(0), 6));
}

TEST_CASE("hat C closed forms") {
  GenFun<KappaPoly> g(4, 6);
  for (int p = 2; p <= 4; ++p) {
    VarList v;
    for (int i = 0; i < p; ++i) v.push_back(i);
    CHECK(agree(g.hatC(v), g.hatC_def(v), 6));
  }
  CHECK(agree(g.hatC_pi({{0, 1}, {2, 3}}), g.hatC_pi_def({{0, 1}, {2, 3}}), 6));
}

TEST_CASE("tilde C2: three routes and the census") {
  GenFun<KappaPoly> g(2, 7);
  KSeries a = g.tildeC2_log(0, 1);
  CHECK(agree(a, g.tildeC2_xform(0, 1), 7));
  CHECK(agree(a, g.tildeC2_polefree(0, 1), 7));
  CHECK(a.coefficient(std::vector<int>{1, 1}) == k({2}));
  CHECK(a.coefficient(std::vector<int>{2, 1}) == k({3}).scaled(2));
  CHECK(a.coefficient(std::vector<int>{3, 1}) == tilde_kappa_ns({3, 1}));
  CHECK(tilde_kappa_formula(3, 2) == tilde_kappa_ns({3, 2}));
}

TEST_CASE("tilde C3 routes") {
  GenFun<KappaPoly> g(3, 6);
  KSeries a = g.tildeC3_gen(0, 1, 2);
  CHECK(agree(a, g.tildeC3_alt(0, 1, 2), 6));
  CHECK(agree(a, g.tildeC3_simple(0, 1, 2), 6));
  CHECK(agree(a, tildeC_from_ns(3, 3, 6), 6));
}

TEST_CASE("bar C corrections against map attributions") {
  const int D = 6;
  GenFun<KappaPoly> g(4, D);
  KSeries c = g.barC_ab({0, 1, 2}, 0, 1);
  CHECK(agree(c, barC_from_ns({{0, 1}, {2}}, {{0, 1}}, 4, D), std::min(c.prec(), D)));
  KSeries t = barC_tensor({{0, 1}, {2}}, {{0, 1}}, g);
  CHECK(agree(t, barC_from_ns({{0, 1}, {2}}, {{0, 1}}, 4, D), std::min(t.prec(), D)));
  KSeries c22 = g.barC_22(0, 1, 2, 3);
  CHECK(agree(c22, barC_from_ns({{0, 1}, {2, 3}}, {{0, 1}}, 4, D), std::min(c22.prec(), D)));
  KSeries c11 = g.barC_11T(0, 1, 2, 3);
  CHECK(agree(c11, barC_from_ns({{0}, {1}, {2, 3}}, {{0, 2}, {1, 2}}, 4, D), std::min(c11.prec(), D)));
  KSeries c31 = g.barC_31(0, 1, 2, 3);
  CHECK(agree(c31, barC_from_ns({{0, 1, 2}, {3}}, {{0, 1}}, 4, D), std::min(c31.prec(), D)));
}

TEST_CASE("block trees") {
  CHECK(block_trees(1).size() == 1);
  CHECK(block_trees(2).size() == 1);
  CHECK(block_trees(3).size() == 4);
}

TEST_CASE("functional moments reproduce the moment table") {
  const int D = 5;
  KappaTable tab = moment_table(D, 3);
  for (int p = 2; p <= 3; ++p)
    for (FunctionalForm form : {FunctionalForm::C, FunctionalForm::H}) {
      PolarSeries<KappaPoly> m = functional_moments<KappaPoly>(p, D, form, {});
      if (p == 2 && form == FunctionalForm::C) m -= PolarSeries<KappaPoly>::kernel(2, 0, 1);
      KSeries s = m.reduced().to_series();
      CHECK(s.prec() >= D);
      for (const Profile& pr : profiles_upto(D, p)) {
        if (static_cast<int>(pr.size()) != p) continue;
        std::vector<int> e = pr;
        std::sort(e.begin(), e.end());
        do CHECK(s.coefficient(e) == tab.at(pr));
        while (std::next_permutation(e.begin(), e.end()));
      }
    }
}

TEST_CASE("specialized ring matches the symbolic ring") {
  Ring<Rational> r{7};
  GenFun<KappaPoly> gs(2, 6);
  GenFun<Rational> gq(2, 6, r);
  QSeries a = gq.tildeC2(0, 1);
  QSeries b = to_ring(gs.tildeC2(0, 1), r);
  CHECK((a - b).truncated(6).is_zero());
}
