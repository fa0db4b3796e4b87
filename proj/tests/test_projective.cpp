#include <doctest.h>

#include <unsupported/Eigen/MatrixFunctions>

#include "gradmap/projective.hpp"
#include "test_support.hpp"

using namespace gradmap;
using testing::basis_point;
using testing::point;
using testing::real_diag;

namespace {

const double kS = 1.0 / std::sqrt(2.0);

CMatrix random_u(int n, Rng& rng) {
  const CMatrix a = CMatrix::NullaryExpr(n, n, [&] { return cplx(rng.normal(), rng.normal()); });
  return 0.5 * (a - a.adjoint());
}

}  // namespace

TEST_CASE("projective: Fubini-Study inner product") {
  Rng rng(1);
  const auto x = testing::point({1.0, cplx(0.2, 0.4), -0.3});
  const TangentVector v(x, testing::random_tangent(x, rng));
  CHECK(fs_inner(v, v) > 0.0);
  for (int i = 0; i < 20; ++i) {
    const TangentVector a(x, testing::random_tangent(x, rng)), b(x, testing::random_tangent(x, rng));
    // Direct oracle: omega(v, w) = Im(v^* w) and (v, w) = Re(v^* w).
    CHECK(fs_inner(complex_structure(a), b) == doctest::Approx(-fs_inner(a, complex_structure(b))).epsilon(1e-12));
    CHECK(fs_inner(a, b) == doctest::Approx(a.vec().dot(b.vec()).real()).epsilon(1e-12));
    CHECK(kahler_form(a, b) == doctest::Approx(a.vec().dot(b.vec()).imag()).epsilon(1e-12));
  }
  const auto e1 = basis_point(2, 0);
  const TangentVector e2(e1, basis_point(2, 1).rep());
  CHECK(fs_inner(e2, e2) == doctest::Approx(1.0));
  CHECK_THROWS_AS(TangentVector(e1, e1.rep()), Error);
}

TEST_CASE("projective: distances and geodesics") {
  CHECK(fs_distance(basis_point(2, 0), basis_point(2, 1)) == doctest::Approx(M_PI / 2));
  const auto x = point({1.0, cplx(0, 1)});
  CHECK(fs_distance(x, ProjectivePoint(cplx(0, 1) * x.rep())) < 1e-12);
  CHECK(x.same_as(ProjectivePoint(std::polar(1.0, 0.7) * x.rep())));
  Rng rng(2);
  for (int i = 0; i < 10; ++i) {
    const auto y = ProjectivePoint(rng.complex_gaussian(3));
    const TangentVector w = TangentVector::horizontal(y, rng.complex_gaussian(3));
    const double t = 0.5 / w.norm();
    CHECK(fs_distance(y, geodesic(w, t)) == doctest::Approx(0.5).epsilon(1e-10));
  }
}

TEST_CASE("projective: fundamental vector fields") {
  const CMatrix h = real_diag({1, -1});
  CHECK(fundamental_field(h, basis_point(2, 0)).norm() < 1e-15);

  const auto x = point({kS, kS});
  const CVector expected = (CVector(2) << kS, -kS).finished();
  CHECK((fundamental_field(h, x).vec() - expected).norm() < 1e-14);
  // Finite-difference oracle on the normalized curve exp(t h) v.
  const double step = 1e-6;
  auto normalized = [&](double t) {
    const CVector w = (t * h).exp() * x.rep();
    return CVector(w / w.norm());
  };
  const CVector fd = (normalized(step) - normalized(-step)) / (2 * step);
  CHECK((TangentVector::horizontal(x, fd).vec() - expected).norm() < 1e-8);

  Rng rng(3);
  const CMatrix phase = kI * CMatrix::Identity(3, 3);
  for (int i = 0; i < 5; ++i) CHECK(fundamental_field(phase, ProjectivePoint(rng.complex_gaussian(3))).norm() < 1e-14);
}

TEST_CASE("projective: moment map") {
  // <-(i/2) e1 e1^*, diag(i, 0)> = Re tr(-(i/2) E11 * diag(-i, 0)) = -1/2
  CHECK(moment_component(basis_point(2, 0), kI * real_diag({1, 0})) == doctest::Approx(-0.5));

  Rng rng(4);
  for (int i = 0; i < 50; ++i) {
    const CMatrix k = haar_unitary(3, rng);
    const auto x = ProjectivePoint(rng.complex_gaussian(3));
    CHECK(frob(moment_map(act(k, x)) - k * moment_map(x) * k.adjoint()) < 1e-10);
  }

  // d mu^xi [w] = omega(xi_Z, w) by central differences
  for (int i = 0; i < 100; ++i) {
    const int n = 2 + i % 3;
    const auto x = ProjectivePoint(rng.complex_gaussian(n));
    const CMatrix xi = random_u(n, rng);
    const CVector w = testing::random_tangent(x, rng);
    const double fd = testing::central_difference(x, w, [&](const ProjectivePoint& y) { return moment_component(y, xi); });
    CHECK(std::abs(fd - kahler_form(fundamental_field(xi, x), TangentVector(x, w))) < 1e-6);
  }
}

TEST_CASE("projective: gradient map") {
  const auto gl2 = CompatibleGroup::real_general_linear(2);
  const auto sl2 = CompatibleGroup::real_special_linear(2);
  CHECK(frob(gradient_map(gl2, basis_point(2, 0)) - 0.5 * real_diag({1, 0})) < 1e-14);
  CHECK(frob(gradient_map(sl2, point({kS, cplx(0, kS)}))) < 1e-14);

  const auto gl3 = CompatibleGroup::real_general_linear(3);
  Rng rng(5);
  for (int i = 0; i < 50; ++i) {
    const CMatrix k = gl3.sample_k(rng);
    const auto x = ProjectivePoint(rng.complex_gaussian(3));
    CHECK(frob(gradient_map(gl3, act(k, x)) - k * gradient_map(gl3, x) * k.inverse()) < 1e-10);
  }
}

TEST_CASE("projective: abelian gradient map of the torus") {
  const auto a = AbelianSubalgebra::diagonal(CompatibleGroup::positive_diagonal_torus(3));
  auto diag_of = [&](const ProjectivePoint& x) { return a.diag_coords(a.from_coords(gradient_map_abelian(a, x))); };
  CHECK((diag_of(basis_point(3, 1)) - (RVector(3) << 0, 0.5, 0).finished()).norm() < 1e-14);
  CHECK((diag_of(point({1, 1, 1})) - RVector::Constant(3, 1.0 / 6.0)).norm() < 1e-14);
  Rng rng(6);
  for (int i = 0; i < 200; ++i) {
    // Coordinate oracle: the simplex conv{e_j / 2} is {d >= 0, sum d = 1/2}.
    const RVector d = diag_of(ProjectivePoint(rng.complex_gaussian(3)));
    CHECK(d.minCoeff() >= 0.0);
    CHECK(d.sum() == doctest::Approx(0.5).epsilon(1e-12));
  }
}

TEST_CASE("projective: norm square and its gradient") {
  const auto sl2 = CompatibleGroup::real_special_linear(2);
  const auto zero = point({kS, cplx(0, kS)});
  CHECK(norm_square(sl2, zero) < 1e-30);
  CHECK(grad_norm_square(sl2, zero).norm() < 1e-15);
  CHECK(norm_square(sl2, basis_point(2, 0)) == doctest::Approx(1.0 / 16.0));

  Rng rng(7);
  const auto gl3 = CompatibleGroup::real_general_linear(3);
  for (int i = 0; i < 100; ++i) {
    const auto& g = i % 2 ? sl2 : gl3;
    const auto x = ProjectivePoint(rng.complex_gaussian(g.n()));
    const CVector w = testing::random_tangent(x, rng);
    const double fd = testing::central_difference(x, w, [&](const ProjectivePoint& y) { return norm_square(g, y); });
    CHECK(std::abs(fd - fs_inner(grad_norm_square(g, x), TangentVector(x, w))) < 1e-6);
  }
}

TEST_CASE("projective: Hessian of mu^beta at the fixed points of beta") {
  const auto sl2 = CompatibleGroup::real_special_linear(2);
  const CMatrix beta = real_diag({1, -1});
  const RVector top = hessian_mu_beta(sl2, beta, basis_point(2, 0)).eigenvalues();
  const RVector bottom = hessian_mu_beta(sl2, beta, basis_point(2, 1)).eigenvalues();
  REQUIRE(top.size() == 2);
  CHECK((top - RVector::Constant(2, -2.0)).norm() < 1e-5);
  CHECK((bottom - RVector::Constant(2, 2.0)).norm() < 1e-5);
  CHECK_THROWS_AS(hessian_mu_beta(sl2, beta, point({1, 1})), Error);

  // Second differences along [v + t w] (not a geodesic, but the first
  // derivative vanishes at a critical point, so second derivatives agree).
  const auto gl3 = CompatibleGroup::real_general_linear(3);
  const CMatrix b3 = real_diag({2, 1, 0});
  const auto x = basis_point(3, 1);
  const TangentOperator hess = hessian_mu_beta(gl3, b3, x);
  Rng rng(8);
  for (int i = 0; i < 10; ++i) {
    const CVector w = testing::random_tangent(x, rng);
    auto fn = [&](double t) {
      const CVector v = x.rep() + t * w;
      return gradient_component(gl3, ProjectivePoint(v), b3);
    };
    const double h = 1e-4;
    const double fd = (fn(h) - 2 * fn(0) + fn(-h)) / (h * h);
    CHECK(std::abs(fd - hess.quadratic_form(w)) < 1e-5 * std::max(1.0, w.squaredNorm()));
  }
}

TEST_CASE("projective: Hessian of f in the zero fiber is a sum of squares") {
  const auto sl2 = CompatibleGroup::real_special_linear(2);
  const auto x = point({kS, cplx(0, kS)});
  const TangentOperator hess = hessian_f(sl2, x);
  const RMatrix d = dmu_matrix(sl2, x, hess.frame);
  CHECK((hess.matrix - d.transpose() * d).norm() < 1e-5);
  CHECK(hess.eigenvalues().minCoeff() > -1e-6);
}

TEST_CASE("projective: kernel of the differential of the gradient map") {
  const auto torus = CompatibleGroup::positive_diagonal_torus(2);
  auto r = dmu_kernel_check(torus, basis_point(2, 0));
  CHECK(r.kernel_dim == r.tangent_dim);
  CHECK(r.orbit_dim == 0);

  const auto sl2 = CompatibleGroup::real_special_linear(2);
  r = dmu_kernel_check(sl2, point({1.0, cplx(0.3, 0.8)}));
  CHECK(r.kernel_dim == 0);
  CHECK(r.orbit_dim == 2);

  Rng rng(9);
  const auto gl3 = CompatibleGroup::real_general_linear(3);
  for (int i = 0; i < 50; ++i) {
    r = dmu_kernel_check(i % 2 ? gl3 : sl2, ProjectivePoint(rng.complex_gaussian(i % 2 ? 3 : 2)));
    CHECK(r.agree);
    CHECK(r.max_angle < 1e-8);
  }
}
