#include <doctest.h>

#include <unsupported/Eigen/MatrixFunctions>

#include "gradmap/flow.hpp"
#include "gradmap/ode.hpp"
#include "test_support.hpp"

using namespace gradmap;
using testing::basis_point;
using testing::point;
using testing::real_diag;

namespace {
const double kS = 1.0 / std::sqrt(2.0);
}

TEST_CASE("ode: exponential decay and harmonic oscillator") {
  OdeOptions opts;
  auto decay = [](double, const RVector& y, RVector& dy) { dy = -y; };
  RVector y0 = RVector::Ones(1);
  OdeResult r = integrate_adaptive(decay, y0, 0.0, 5.0, opts);
  CHECK(r.t == 5.0);
  CHECK(std::abs(r.y(0) - std::exp(-5.0)) < 1e-9);

  auto osc = [](double, const RVector& y, RVector& dy) {
    dy.resize(2);
    dy << y(1), -y(0);
  };
  RVector z0(2);
  z0 << 1.0, 0.0;
  r = integrate_adaptive(osc, z0, 0.0, 10.0, opts, [](RVector& y) { y.normalize(); });
  CHECK(std::abs(r.y(0) - std::cos(10.0)) < 1e-8);
  CHECK(std::abs(r.y(1) + std::sin(10.0)) < 1e-8);

  // Grid endpoints that are not representable sums of steps.
  for (double t_end : {0.3, 0.7, 1.1, 2.9}) CHECK(integrate_adaptive(decay, y0, 0.1, t_end, opts).t == t_end);
}

TEST_CASE("ode: observer stops and underflow raises") {
  OdeOptions opts;
  auto decay = [](double, const RVector& y, RVector& dy) { dy = -y; };
  const OdeResult r = integrate_adaptive(decay, RVector::Ones(1), 0.0, 10.0, opts,
                                         {}, [](double t, const RVector&, const RVector&) { return t < 1.0; });
  CHECK(r.stopped_by_observer);
  CHECK(r.t >= 1.0);
  CHECK(r.t < 10.0);

  opts.min_step = 1e-3;
  auto blowup = [](double, const RVector& y, RVector& dy) { dy = y.array().square(); };
  CHECK_THROWS_AS(integrate_adaptive(blowup, RVector::Ones(1), 0.0, 2.0, opts), Error);
}

TEST_CASE("ode: hermite interpolation is exact on cubics") {
  auto p = [](double t) { return RVector::Constant(1, 2 * t * t * t - t + 3); };
  auto dp = [](double t) { return RVector::Constant(1, 6 * t * t - 1); };
  const RVector y = hermite_interpolate(0.5, p(0.5), dp(0.5), 1.5, p(1.5), dp(1.5), 1.2);
  CHECK(y(0) == doctest::Approx(p(1.2)(0)).epsilon(1e-12));
}

TEST_CASE("flow: critical starting points do not move") {
  const auto sl2 = CompatibleGroup::real_special_linear(2);
  for (const auto& x0 : {basis_point(2, 0), point({0.6, 0.8}), point({kS, cplx(0, kS)})}) {
    const Trajectory tr = integrate_flow(sl2, x0);
    REQUIRE(tr.converged());
    CHECK(tr.limit->same_as(x0, 1e-12));
  }
}

TEST_CASE("flow: converges to the zero fiber from a non-real point") {
  const auto sl2 = CompatibleGroup::real_special_linear(2);
  const auto x0 = point({1.0, cplx(0, 0.3)});
  const Trajectory tr = integrate_flow(sl2, x0);
  REQUIRE(tr.converged());
  // Closed form: mu_p = 0 exactly at [(e1 +- i e2)/sqrt2].
  CHECK(tr.limit->same_as(point({kS, cplx(0, kS)}), 1e-8));
  CHECK(frob(gradient_map(sl2, *tr.limit)) < 1e-8);
  CHECK(tr.min_decrease >= -1e-8);
  for (std::size_t k = 1; k < tr.f_values.size(); ++k) CHECK(tr.f_values[k] <= tr.f_values[k - 1] + 1e-12);
}

TEST_CASE("flow: K-equivariance of the flow") {
  const auto gl3 = CompatibleGroup::real_general_linear(3);
  Rng rng(11);
  for (int i = 0; i < 5; ++i) {
    const auto x0 = ProjectivePoint(rng.complex_gaussian(3));
    const CMatrix k = gl3.sample_k(rng);
    const auto a = flow_to_time(gl3, act(k, x0), 3.0);
    const auto b = act(k, flow_to_time(gl3, x0, 3.0));
    CHECK(fs_distance(a, b) < 1e-7);
  }
}

TEST_CASE("flow: group lift") {
  const auto sl2 = CompatibleGroup::real_special_linear(2);
  const auto e1 = basis_point(2, 0);
  Trajectory tr = integrate_flow(sl2, e1);
  GroupLift lift = group_lift(sl2, e1, tr);
  const CMatrix beta = gradient_map(sl2, e1);
  for (std::size_t k = 0; k < tr.times.size(); ++k) {
    CHECK(frob(lift.elements[k] - (tr.times[k] * beta).exp()) < 1e-8);
    CHECK(act(lift.elements[k].inverse(), e1).same_as(e1, 1e-10));
  }

  Rng rng(12);
  for (int i = 0; i < 5; ++i) {
    const auto x0 = ProjectivePoint(rng.complex_gaussian(2));
    tr = integrate_flow(sl2, x0);
    lift = group_lift(sl2, x0, tr);
    CHECK(lift.max_drift < 1e-6);
    CHECK(lift.max_det_error < 1e-9);
    // Independent audit of the stored elements.
    for (std::size_t k = 0; k < tr.times.size(); k += 17)
      CHECK(fs_distance(act(lift.elements[k].inverse(), x0), ProjectivePoint(tr.states[k])) < 1e-6);
  }
}

TEST_CASE("flow: Lojasiewicz diagnostics") {
  const auto sl2 = CompatibleGroup::real_special_linear(2);
  Rng rng(13);
  for (int i = 0; i < 5; ++i) {
    const Trajectory tr = integrate_flow(sl2, ProjectivePoint(rng.complex_gaussian(2)));
    REQUIRE(tr.converged());
    const LojasiewiczReport rep = lojasiewicz_diagnostics(tr);
    CHECK(rep.bound_residual <= 1e-8);
    CHECK(rep.arc_residual <= 1e-9);
    CHECK(rep.min_decrease >= -1e-8);
    REQUIRE(rep.gamma_fit.has_value());
    // Nondegenerate minimum: exponential convergence gives the boundary exponent.
    CHECK(*rep.gamma_fit == doctest::Approx(0.5).epsilon(0.1));
  }
  Trajectory tiny;
  CHECK_THROWS_AS(lojasiewicz_diagnostics(tiny), Error);
}

TEST_CASE("flow: critical components of the torus on P(C^2)") {
  const auto torus = CompatibleGroup::positive_diagonal_torus(2);
  ComponentSearchOptions opts;
  opts.seed_count = 16;
  opts.rng_seed = 5;
  const auto comps = find_critical_components(torus, opts);
  // Closed form: f = (|v1|^4 + |v2|^4)/8 has minimum 1/16 on |v1| = |v2| and
  // maximum 1/8 at the coordinate points.
  REQUIRE(comps.size() == 2);
  CHECK(comps[0].f_value == doctest::Approx(1.0 / 16.0).epsilon(1e-8));
  CHECK(comps[1].f_value == doctest::Approx(1.0 / 8.0).epsilon(1e-8));
  for (const auto& c : comps)
    for (const auto& m : c.members) CHECK(grad_norm_square(torus, m).norm() < 1e-7);
  for (const auto& m : comps[1].members) {
    const double a = std::norm(m.rep()(0));
    CHECK(std::min(a, 1.0 - a) < 1e-8);
  }

  const auto again = find_critical_components(torus, opts);
  REQUIRE(again.size() == comps.size());
  for (std::size_t i = 0; i < comps.size(); ++i) {
    CHECK(again[i].f_value == comps[i].f_value);
    CHECK(again[i].members.size() == comps[i].members.size());
  }
}

TEST_CASE("flow: strata, retraction and orbit distances") {
  const auto sl2 = CompatibleGroup::real_special_linear(2);
  const auto a = AbelianSubalgebra::diagonal(sl2);
  const StratumLabel zero = classify_stratum(a, point({kS, cplx(0, kS)}));
  CHECK(zero.beta_plus.norm() < 1e-9);
  CHECK(zero.f_value < 1e-16);
  const StratumLabel top = classify_stratum(a, basis_point(2, 0));
  CHECK((top.beta_plus - (RVector(2) << 0.25, -0.25).finished()).norm() < 1e-9);
  CHECK_FALSE(same_label(zero, top));

  const RetractionReport r = retraction_check(sl2, 20, 3);
  CHECK(r.unconverged == 0);
  CHECK(r.max_limit_mu < 1e-8);
  CHECK(r.max_equivariance_error < 1e-6);
  CHECK(r.max_fixed_motion < 1e-8);

  Rng rng(14);
  const auto gl3 = CompatibleGroup::real_general_linear(3);
  const auto x = ProjectivePoint(rng.complex_gaussian(3));
  const CMatrix k = gl3.sample_k(rng);
  CHECK(k_orbit_distance(gl3, x, act(k, x), 5, rng).distance < 1e-8);
}

TEST_CASE("flow: Ness uniqueness on P^1") {
  const auto sl2 = CompatibleGroup::real_special_linear(2);
  // G [e1] = RP^1 is a single K-orbit of critical points with f = 1/16.
  NessReport r = ness_uniqueness_experiment(sl2, basis_point(2, 0), 10, 4);
  CHECK(r.unconverged == 0);
  CHECK(r.different == 0);
  for (double f : r.limit_f) CHECK(f == doctest::Approx(1.0 / 16.0).epsilon(1e-10));
  // A non-real orbit is a half-plane and meets the zero fiber in one point.
  r = ness_uniqueness_experiment(sl2, point({1.0, cplx(0, 0.5)}), 10, 4);
  CHECK(r.unconverged == 0);
  CHECK(r.f_spread < 1e-7);
  CHECK(r.different == 0);
  for (double f : r.limit_f) CHECK(f < 1e-12);
}

TEST_CASE("flow: unstable manifold census in closed form") {
  const auto torus2 = CompatibleGroup::positive_diagonal_torus(2);
  CensusReport c = unstable_manifold_census(torus2, real_diag({1, 0}), 200, 1);
  REQUIRE(c.components.size() == 2);
  CHECK(c.components[0].representative.same_as(basis_point(2, 0)));
  CHECK(c.components[0].basin_count == 200);
  CHECK(c.components[1].basin_count == 0);
  CHECK(c.open_component == 0);

  c = unstable_manifold_census(torus2, CMatrix::Zero(2, 2), 50, 1);
  REQUIRE(c.components.size() == 1);
  CHECK(c.components[0].index == 0);
  CHECK(c.components[0].basin_count == 50);

  const auto torus3 = CompatibleGroup::positive_diagonal_torus(3);
  c = unstable_manifold_census(torus3, real_diag({2, 1, 0}), 300, 2);
  REQUIRE(c.components.size() == 3);
  CHECK(c.components[0].index == 4);
  CHECK(c.components[1].index == 2);
  CHECK(c.components[2].index == 0);
  CHECK(c.components[0].basin_count == 300);
  CHECK(c.unassigned == 0);
}

TEST_CASE("flow: uniform sampler has the right second moments") {
  Rng rng(15);
  RVector mean = RVector::Zero(3);
  const int m = 4000;
  for (int i = 0; i < m; ++i) {
    const auto x = sample_uniform(3, rng);
    CHECK(x.rep().norm() == doctest::Approx(1.0));
    mean += x.rep().cwiseAbs2() / m;
  }
  CHECK((mean - RVector::Constant(3, 1.0 / 3.0)).cwiseAbs().maxCoeff() < 0.02);
}
