#include "doctest.h"

#include "json.hpp"

#include "freecum/identities.hpp"

using namespace fc;

namespace {

IdentityReport run(const std::string& name, int depth, Mode mode = Mode::Symbolic, bool uncorrected = false) {
  VerifyOptions o;
  o.depth = depth;
  o.mode = mode;
  o.seed = 42;
  o.uncorrected = uncorrected;
  return verify_identity(name, o);
}

}  // namespace

TEST_CASE("every proven identity holds at small depth") {
  for (const auto& info : identity_registry()) {
    if (info.conjecture) continue;
    int d = std::min(info.default_depth, 5);
    IdentityReport s = run(info.name, d);
    CHECK_MESSAGE(s.pass, info.name << " symbolic fails at " << s.monomial);
    IdentityReport q = run(info.name, d, Mode::Specialized);
    CHECK_MESSAGE(q.pass, info.name << " specialized fails at " << q.monomial);
  }
}

TEST_CASE("the fourth-order transcriptions with the original indices fail") {
  for (const char* name : {"fourth_c2c2_a", "fourth_c2c2_b", "fourth_c2c2_c"}) {
    IdentityReport r = run(name, 8, Mode::Symbolic, true);
    CHECK_FALSE(r.pass);
    CHECK_FALSE(r.monomial.empty());
  }
}

TEST_CASE("first-order cancellation at p = 3") {
  GenFun<KappaPoly> g(3, 6);
  Check<KappaPoly> c = conjecture_order1_check(g, 3);
  PolarSeries<KappaPoly> diff = (c.lhs - c.rhs).reduced();
  CHECK(diff.numerator().truncated(std::min(diff.numerator().prec(), 5)).is_zero());
}

TEST_CASE("conjecture at p = 4 at low depth") {
  IdentityReport r = run("conjecture_order1_p4", 4);
  CHECK(r.conjecture);
  CHECK(r.pass);
}

TEST_CASE("exit status") {
  IdentityReport ok, bad, conj;
  bad.pass = false;
  conj.pass = false;
  conj.conjecture = true;
  CHECK(exit_status({ok}) == 0);
  CHECK(exit_status({ok, conj}) == 2);
  CHECK(exit_status({bad, conj}) == 1);
}

TEST_CASE("report JSON") {
  IdentityReport r = run("c2dd", 6, Mode::Specialized);
  auto j = nlohmann::json::parse(r.to_json());
  CHECK(j["name"] == "c2dd");
  CHECK(j["depth"] == 6);
  CHECK(j["mode"] == "specialized");
  CHECK(j["seed"] == 42);
  CHECK(j["verdict"] == "pass");
}

TEST_CASE("unknown names and depth limits") {
  CHECK_THROWS_AS(identity_info("no_such_identity"), DomainError);
  CHECK_THROWS_AS(run("lagrange", 40), GuardError);
}
