#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "gradmap/io.hpp"
#include "gradmap/report.hpp"
#include "gradmap/scenario.hpp"
#include "gradmap/suites.hpp"
#include "test_support.hpp"

using namespace gradmap;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("scenarios: registry") {
  const auto names = scenario_names();
  CHECK(names == std::vector<std::string>{"sl2r-p1", "torus-pn", "two-orbit-p2", "rpn-coisotropic",
                                          "gl2r-unique-closed"});
  for (const auto& name : names) {
    const Scenario s = make_scenario(name);
    CHECK(s.name == name);
    CHECK_FALSE(s.suites.empty());
    for (const auto& suite : s.suites)
      CHECK(std::find(suite_names().begin(), suite_names().end(), suite) != suite_names().end());
  }
  CHECK(code_of([] { make_scenario("nope"); }) == ErrorCode::UnknownScenario);
  CHECK(make_scenario("torus-pn", 4).n() == 4);
  CHECK_THROWS_AS(make_scenario("torus-pn", 7), Error);
}

TEST_CASE("scenarios: samplers respect the constraint") {
  for (const auto& name : scenario_names()) {
    const Scenario s = make_scenario(name);
    Rng rng(derive_seed(1, name.size()));
    for (int i = 0; i < 100; ++i) {
      for (const auto& sampler : {s.sample, s.sample_spread}) {
        const ProjectivePoint x = sampler(rng);
        CHECK(x.dim() == s.n());
        if (s.constrained) CHECK(s.constraint_residual(x) < 1e-10);
      }
    }
  }
}

TEST_CASE("scenarios: real tangent projector") {
  Rng rng(2);
  for (int i = 0; i < 50; ++i) {
    // A real point with a random phase on its representative.
    const CVector v = std::polar(1.0, rng.uniform(0, 6.28)) * sample_real_point(3, rng).rep();
    const CVector w = testing::random_tangent(ProjectivePoint(v), rng);
    const CVector pw = project_real_tangent(v, w);
    CHECK((project_real_tangent(v, pw) - pw).norm() < 1e-12);
    CHECK(std::abs(v.dot(pw)) < 1e-12);
    // Moving along pw stays real to second order.
    const double h = 1e-5;
    CHECK(real_point_residual(ProjectivePoint(v + h * pw)) < 1e-8);
    // The discarded part is normal.
    CHECK(std::abs((w - pw).dot(pw).real()) < 1e-12);
  }
}

TEST_CASE("scenarios: two-orbit group and the Veronese conic") {
  const Scenario s = make_scenario("two-orbit-p2");
  CHECK(s.group.dim() == 6);
  CHECK(s.group.dim_k() == 3);
  CHECK(s.group.dim_p() == 3);
  Rng rng(3);
  for (int i = 0; i < 50; ++i) {
    // [a^2, sqrt2 ab, b^2] is the rank-one symmetric tensor (a, b)(a, b)^T.
    const CVector v = s.sample_closed_orbit(rng).rep();
    Eigen::Matrix2cd m;
    m << v(0), v(1) / std::sqrt(2.0), v(1) / std::sqrt(2.0), v(2);
    CHECK(std::abs(m.determinant()) < 1e-12);
  }
  // The conic is a single G-orbit: g (a, b) acts by Sym^2.
  const auto x = veronese_point(1.0, 0.0);
  for (int i = 0; i < 10; ++i) {
    const CVector v = act(s.group.sample_g(rng, 1.0), x).rep();
    Eigen::Matrix2cd m;
    m << v(0), v(1) / std::sqrt(2.0), v(1) / std::sqrt(2.0), v(2);
    CHECK(std::abs(m.determinant()) < 1e-10);
  }
}

TEST_CASE("scenarios: Hessian of f vanishes on K-orbit directions at the conic") {
  const Scenario s = make_scenario("two-orbit-p2");
  const auto x = veronese_point(1.0, 0.0);
  const TangentOperator hess = hessian_f(s.group, x);
  for (const auto& k : s.group.k_basis()) CHECK(std::abs(hess.quadratic_form(fundamental_field(k, x).vec())) < 1e-6);
}

TEST_CASE("scenarios: configuration files") {
  json cfg = {{"name", "gl2"},
              {"group", group_to_json(CompatibleGroup::real_general_linear(2))},
              {"projective_dim", 2},
              {"constraint", "real"},
              {"critical_points", {point_to_json(testing::basis_point(2, 0))}},
              {"suites", {"gradient-identity"}}};
  const Scenario s = scenario_from_config(cfg);
  CHECK(s.name == "gl2");
  CHECK(s.constrained);
  CHECK(s.group.kind() == GroupKind::RealGeneralLinear);
  CHECK(s.suites == std::vector<std::string>{"gradient-identity"});
  const RunReport r = run_suite(s, "gradient-identity", 1, SuiteOptions{0.05});
  CHECK(r.overall() == Verdict::Pass);

  cfg["projective_dim"] = 3;
  CHECK_THROWS_AS(scenario_from_config(cfg), Error);

  const auto custom = make_scenario("two-orbit-p2").group;
  const CompatibleGroup back = group_from_json(group_to_json(custom));
  REQUIRE(back.dim() == custom.dim());
  for (const auto& b : custom.lie_algebra_basis()) CHECK(back.algebra_residual(b) < 1e-12);
}

TEST_CASE("io: round trips") {
  Rng rng(4);
  const CMatrix m = CMatrix::Random(3, 2);
  CHECK(frob(matrix_from_json(matrix_to_json(m)) - m) == 0.0);
  const ProjectivePoint x(rng.complex_gaussian(3));
  CHECK(point_from_json(point_to_json(x)).same_as(x, 1e-15));
  CHECK(point_from_json(json::parse("[1, 0]")).same_as(testing::basis_point(2, 0)));
  const Polytope p = permutohedron((RVector(3) << 1, 0, -1).finished());
  const Polytope q = polytope_from_json(polytope_to_json(p));
  REQUIRE(q.size() == p.size());
  for (std::size_t i = 0; i < p.size(); ++i) CHECK((p.vertices()[i] - q.vertices()[i]).norm() == 0.0);
}

TEST_CASE("report: verdict algebra") {
  const Verdict all[] = {Verdict::Pass, Verdict::Fail, Verdict::Inconclusive};
  for (Verdict a : all) {
    CHECK(combine(Verdict::Pass, a) == a);
    CHECK(verdict_from_string(to_string(a)) == a);
    for (Verdict b : all) {
      CHECK(combine(a, b) == combine(b, a));
      for (Verdict c : all) CHECK(combine(combine(a, b), c) == combine(a, combine(b, c)));
    }
  }
  CHECK(combine(Verdict::Fail, Verdict::Inconclusive) == Verdict::Fail);
}

TEST_CASE("report: checks and JSON") {
  CHECK(check_below("a", 1.0, 2.0).verdict == Verdict::Pass);
  CHECK(check_below("a", 2.0, 2.0).verdict == Verdict::Fail);
  CHECK(check_at_most("a", 2.0, 2.0).verdict == Verdict::Pass);
  CHECK(check_at_least("a", NAN, 0.0).verdict == Verdict::Fail);
  CHECK(check_equal("a", 3.0, 3.0).verdict == Verdict::Pass);

  RunReport r("s", "t", 9);
  r.add(check_below("x", 1e-12, 1e-10, {{"samples", 3}}));
  r.add(check_at_least("y", NAN, 0.0));
  CHECK_THROWS_AS(r.add(check_below("x", 0.0, 1.0)), Error);
  CHECK(r.overall() == Verdict::Fail);
  CHECK(r.exit_code() == 1);
  r.set_timing("total_seconds", 0.5);
  const json j = r.to_json();
  CHECK(j["schema"] == kReportSchema);
  const RunReport back = RunReport::from_json(json::parse(j.dump()));
  CHECK(back.to_json() == j);
  CHECK(std::isnan(back.check("y").value));
  CHECK_FALSE(r.to_json(false).contains("timing"));

  CheckResult soft;
  soft.name = "z";
  soft.verdict = Verdict::Inconclusive;
  RunReport q("s", "t", 1);
  q.add(soft);
  CHECK(q.exit_code() == 0);
}

TEST_CASE("suites: unknown names and determinism") {
  const Scenario s1 = make_scenario("sl2r-p1");
  CHECK(code_of([&] { run_suite(s1, "census", 1); }) == ErrorCode::UnknownSuite);
  CHECK(code_of([&] { run_suite(s1, "no-such-suite", 1); }) == ErrorCode::UnknownSuite);
  for (const char* suite : {"gradient-identity", "flow-convergence", "ness"}) {
    const json a = run_suite(s1, suite, 21, SuiteOptions{0.05}).to_json(false);
    const json b = run_suite(s1, suite, 21, SuiteOptions{0.05}).to_json(false);
    CHECK(a.dump() == b.dump());
  }
}

TEST_CASE("suites: every registered suite runs at reduced size") {
  for (const auto& name : scenario_names()) {
    const Scenario s = make_scenario(name);
    for (const auto& suite : s.suites) {
      CAPTURE(name);
      CAPTURE(suite);
      const RunReport r = run_suite(s, suite, 3, SuiteOptions{0.05});
      CHECK_FALSE(r.checks().empty());
      CHECK(r.overall() != Verdict::Fail);
    }
  }
}
