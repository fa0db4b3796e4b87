#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "gradmap/lie.hpp"
#include "test_support.hpp"

using namespace gradmap;
using testing::real_diag;

namespace {

CMatrix unit(int n, int i, int j) {
  CMatrix e = CMatrix::Zero(n, n);
  e(i, j) = 1.0;
  return e;
}

double max_gram_error(const std::vector<CMatrix>& basis) {
  double err = 0.0;
  for (std::size_t a = 0; a < basis.size(); ++a)
    for (std::size_t b = 0; b < basis.size(); ++b)
      err = std::max(err, std::abs(inner(basis[a], basis[b]) - (a == b ? 1.0 : 0.0)));
  return err;
}

}  // namespace

TEST_CASE("core: hermitian functions invert each other") {
  Rng rng(3);
  const CMatrix a = CMatrix::Random(4, 4);
  const CMatrix p = a * a.adjoint() + CMatrix::Identity(4, 4);
  CHECK(frob(hermitian_exp(hermitian_log(p)) - p) < 1e-10);
  const CMatrix root = hermitian_pow(p, 0.5);
  CHECK(frob(root * root - p) < 1e-10);
  CHECK(frob(hermitian_pow(p, -1.0) * p - CMatrix::Identity(4, 4)) < 1e-10);
}

TEST_CASE("core: principal angles of known subspaces") {
  RMatrix a = RMatrix::Zero(3, 1);
  a(0, 0) = 1.0;
  RMatrix b(3, 1);
  b << std::cos(0.3), std::sin(0.3), 0.0;
  const RVector ang = principal_angles(a, b);
  REQUIRE(ang.size() == 1);
  CHECK(ang(0) == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(principal_angles(RMatrix(3, 0), b).size() == 0);
}

TEST_CASE("core: seeded randomness is reproducible") {
  CHECK(derive_seed(7, 3) == derive_seed(7, 3));
  CHECK(derive_seed(7, 3) != derive_seed(7, 4));
  Rng r1(11), r2(11);
  CHECK((r1.complex_gaussian(5) - r2.complex_gaussian(5)).norm() == 0.0);
  Rng rng(5);
  for (int i = 0; i < 20; ++i) {
    const RMatrix q = haar_orthogonal(4, rng, true);
    CHECK((q.transpose() * q - RMatrix::Identity(4, 4)).norm() < 1e-12);
    CHECK(q.determinant() == doctest::Approx(1.0));
    const CMatrix u = haar_unitary(3, rng);
    CHECK(frob(u.adjoint() * u - CMatrix::Identity(3, 3)) < 1e-12);
  }
}

TEST_CASE("lie: group dimensions and orthonormal bases") {
  struct Case {
    CompatibleGroup g;
    int dk, dp;
  };
  const std::vector<Case> cases = {
      {CompatibleGroup::real_general_linear(3), 3, 6},
      {CompatibleGroup::real_special_linear(3), 3, 5},
      {CompatibleGroup::full_complex(2), 4, 4},
      {CompatibleGroup::positive_diagonal_torus(4), 0, 4},
  };
  for (const auto& c : cases) {
    CHECK(c.g.dim_k() == c.dk);
    CHECK(c.g.dim_p() == c.dp);
    CHECK(max_gram_error(c.g.lie_algebra_basis()) < 1e-12);
    for (const auto& k : c.g.k_basis()) CHECK(frob(theta(k) - k) < 1e-12);
    for (const auto& p : c.g.p_basis()) CHECK(frob(theta(p) + p) < 1e-12);
  }
}

TEST_CASE("lie: cartan_project examples") {
  const auto gl2 = CompatibleGroup::real_general_linear(2);
  CMatrix xi = unit(2, 0, 1);
  auto parts = cartan_project(gl2, xi);
  CMatrix k(2, 2), p(2, 2);
  k << 0.0, 0.5, -0.5, 0.0;
  p << 0.0, 0.5, 0.5, 0.0;
  CHECK(frob(parts.k_part - k) < 1e-14);
  CHECK(frob(parts.p_part - p) < 1e-14);

  parts = cartan_project(gl2, CMatrix::Identity(2, 2));
  CHECK(frob(parts.k_part) < 1e-14);
  CHECK(frob(parts.p_part - CMatrix::Identity(2, 2)) < 1e-14);

  const auto gl3 = CompatibleGroup::real_general_linear(3);
  Rng rng(1);
  for (int i = 0; i < 20; ++i) {
    const CMatrix x = rng.real_gaussian(9).reshaped(3, 3).cast<cplx>();
    parts = cartan_project(gl3, x);
    CHECK(frob(parts.k_part + parts.p_part - x) < 1e-12);
    CHECK(std::abs(inner(parts.k_part, parts.p_part)) < 1e-12);
  }
  CHECK_THROWS_AS(cartan_project(gl3, kI * CMatrix::Identity(3, 3)), Error);
}

TEST_CASE("lie: ad eigendecomposition matches the bracket table") {
  const auto sl2 = CompatibleGroup::real_special_linear(2);
  auto ad = ad_eigendecomposition(sl2, real_diag({1, -1}));
  REQUIRE(ad.eigenvalues.size() == 3);
  CHECK(ad.eigenvalues[0] == doctest::Approx(-2.0));
  CHECK(std::abs(ad.eigenvalues[1]) < 1e-12);
  CHECK(ad.eigenvalues[2] == doctest::Approx(2.0));
  for (const auto& space : ad.eigenspaces) CHECK(space.size() == 1);
  // [h, e] = 2e, [h, f] = -2f
  CHECK(std::abs(std::abs(inner(ad.eigenspaces[2][0], unit(2, 0, 1))) - 1.0) < 1e-12);
  CHECK(std::abs(std::abs(inner(ad.eigenspaces[0][0], unit(2, 1, 0))) - 1.0) < 1e-12);

  ad = ad_eigendecomposition(sl2, CMatrix::Zero(2, 2));
  REQUIRE(ad.eigenvalues.size() == 1);
  CHECK(ad.eigenvalues[0] == 0.0);
  CHECK(ad.eigenspaces[0].size() == 3);

  const auto gl3 = CompatibleGroup::real_general_linear(3);
  const RVector b = (RVector(3) << 1, 0, -1).finished();
  const CMatrix beta = b.cast<cplx>().asDiagonal();
  ad = ad_eigendecomposition(gl3, beta);
  // Oracle: [beta, E_ij] = (b_i - b_j) E_ij.
  std::map<double, int> expected;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) ++expected[b(i) - b(j)];
  REQUIRE(ad.eigenvalues.size() == expected.size());
  for (std::size_t k = 0; k < ad.eigenvalues.size(); ++k) {
    const double rounded = std::round(ad.eigenvalues[k]);
    CHECK(std::abs(ad.eigenvalues[k] - rounded) < 1e-12);
    CHECK(static_cast<int>(ad.eigenspaces[k].size()) == expected[rounded]);
    for (const auto& x : ad.eigenspaces[k]) CHECK(frob(bracket(beta, x) - ad.eigenvalues[k] * x) < 1e-10);
  }
  CHECK(ad.centralizer().size() == 3);
  CHECK(ad.positive_part().size() == 3);
  CHECK(ad.parabolic().size() == 6);
}

TEST_CASE("lie: restricted roots") {
  auto roots_of = [](const CompatibleGroup& g) {
    std::set<std::vector<double>> out;
    for (const auto& r : restricted_roots(AbelianSubalgebra::diagonal(g))) {
      CHECK(r.multiplicity == 1);
      std::vector<double> f;
      for (double c : r.functional) {
        CHECK(std::abs(c - std::round(c)) < 1e-12);
        f.push_back(std::round(c) + 0.0);
      }
      out.insert(f);
    }
    return out;
  };
  CHECK(roots_of(CompatibleGroup::real_general_linear(2)) ==
        std::set<std::vector<double>>{{1.0, -1.0}, {-1.0, 1.0}});
  const auto r3 = roots_of(CompatibleGroup::real_general_linear(3));
  CHECK(r3.size() == 6);
  for (const auto& f : r3) {
    CHECK(std::count(f.begin(), f.end(), 1.0) == 1);
    CHECK(std::count(f.begin(), f.end(), -1.0) == 1);
  }
  CHECK(restricted_roots(AbelianSubalgebra::diagonal(CompatibleGroup::positive_diagonal_torus(3))).empty());
}

TEST_CASE("lie: weyl orbits and chamber representatives") {
  const auto a = AbelianSubalgebra::diagonal(CompatibleGroup::real_special_linear(3));
  CHECK(weyl_orbit(a, (RVector(3) << 1, 0, -1).finished()).size() == 6);
  CHECK(weyl_orbit(a, RVector::Zero(3)).size() == 1);
  const auto a_gl = AbelianSubalgebra::diagonal(CompatibleGroup::real_general_linear(3));
  CHECK(weyl_orbit(a_gl, (RVector(3) << 1, 1, 0).finished()).size() == 3);

  const auto a2 = AbelianSubalgebra::diagonal(CompatibleGroup::real_general_linear(2));
  CHECK((chamber_representative(a2, (RVector(2) << 0, 1).finished()) - (RVector(2) << 1, 0).finished()).norm() ==
        0.0);
  CHECK((chamber_representative(a_gl, (RVector(3) << -1, 2, 0).finished()) - (RVector(3) << 2, 0, -1).finished())
            .norm() == 0.0);

  Rng rng(9);
  for (int i = 0; i < 20; ++i) {
    const RVector beta = rng.real_gaussian(3);
    const RVector rep = chamber_representative(a_gl, beta);
    for (const auto& w : weyl_orbit(a_gl, beta)) CHECK((chamber_representative(a_gl, w) - rep).norm() == 0.0);
  }
}

TEST_CASE("lie: custom groups must be closed and theta-stable") {
  // span{e} is not theta-stable
  CHECK_THROWS_AS(CompatibleGroup::custom(2, {unit(2, 0, 1)}), Error);
  // span{e + f, h} is theta-stable but [h, e + f] = 2(e - f) leaves it
  CHECK_THROWS_AS(CompatibleGroup::custom(2, {unit(2, 0, 1) + unit(2, 1, 0), real_diag({1, -1})}), Error);
  const auto g = CompatibleGroup::custom(2, {real_diag({1, -1}), unit(2, 0, 1) - unit(2, 1, 0),
                                             unit(2, 0, 1) + unit(2, 1, 0)});
  CHECK(g.dim_k() == 1);
  CHECK(g.dim_p() == 2);
}
