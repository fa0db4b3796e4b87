#include <doctest.h>

#include <algorithm>
#include <array>

#include "gradmap/convex.hpp"
#include "test_support.hpp"

using namespace gradmap;

namespace {

RVector vec(std::initializer_list<double> c) {
  RVector v(static_cast<Eigen::Index>(c.size()));
  Eigen::Index i = 0;
  for (double x : c) v(i++) = x;
  return v;
}

Polytope square() { return convex_hull({vec({0, 0}), vec({1, 0}), vec({1, 1}), vec({0, 1})}).polytope; }

// Independent 2D oracle: monotone-chain hull plus half-plane tests.
using P2 = std::array<double, 2>;

double cross(const P2& o, const P2& a, const P2& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

std::vector<P2> hull2d(std::vector<P2> p) {
  std::sort(p.begin(), p.end());
  std::vector<P2> h(2 * p.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], p[i]) <= 0) --k;
    h[k++] = p[i];
  }
  for (std::size_t i = p.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 2], h[k - 1], p[i]) <= 0) --k;
    h[k++] = p[i];
  }
  h.resize(k - 1);
  return h;
}

bool inside2d(const std::vector<P2>& h, const P2& q, double tol) {
  for (std::size_t i = 0; i < h.size(); ++i) {
    const P2& a = h[i];
    const P2& b = h[(i + 1) % h.size()];
    const double len = std::hypot(b[0] - a[0], b[1] - a[1]);
    if (cross(a, b, q) / len < -tol) return false;
  }
  return true;
}

// Orthonormal coordinates on the plane sum = const in R^3.
P2 plane(const RVector& x) {
  return {(x(0) - x(1)) / std::sqrt(2.0), (x(0) + x(1) - 2 * x(2)) / std::sqrt(6.0)};
}

}  // namespace

TEST_CASE("convex: support function") {
  const Polytope sq = square();
  CHECK(support_function(sq, vec({1, 0})) == 1.0);
  const Polytope pt({vec({0.3, -2})});
  CHECK(support_function(pt, vec({2, 1})) == doctest::Approx(0.3 * 2 - 2));
  Rng rng(1);
  const Polytope hex = permutohedron(vec({1, 0, -1}));
  for (int i = 0; i < 500; ++i) {
    const RVector u = rng.real_gaussian(3), w = rng.real_gaussian(3);
    CHECK(support_function(hex, u + w) <= support_function(hex, u) + support_function(hex, w) + 1e-12);
    CHECK(support_function(hex, 2.5 * u) == doctest::Approx(2.5 * support_function(hex, u)));
  }
}

TEST_CASE("convex: exposed faces") {
  const Polytope sq = square();
  CHECK(exposed_face(sq, vec({1, 0})).size() == 2);
  CHECK(exposed_face(sq, vec({1, 1})).size() == 1);
  CHECK_THROWS_AS(exposed_face(sq, vec({0, 0})), Error);
  Rng rng(2);
  const Polytope hex = permutohedron(vec({1, 0, -1}));
  for (int i = 0; i < 50; ++i) {
    const RVector u = rng.real_gaussian(3);
    const Polytope f = exposed_face(hex, u);
    CHECK(polytope_equal_by_support(exposed_face(f, u), f).equal);
  }
  // Relative interiors of distinct faces are disjoint: the centroid of the
  // right edge is not exposed by the top direction.
  const Polytope right = exposed_face(sq, vec({1, 0}));
  const RVector c = 0.5 * (right.vertices()[0] + right.vertices()[1]);
  CHECK_FALSE(contains(exposed_face(sq, vec({0, 1})), c));
}

TEST_CASE("convex: hulls") {
  HullResult h = convex_hull({vec({0, 0}), vec({1, 0}), vec({1, 1}), vec({0, 1}), vec({0.5, 0.5})});
  CHECK(h.polytope.size() == 4);
  CHECK(h.vertex_indices == std::vector<std::size_t>{0, 1, 2, 3});

  h = convex_hull({vec({0, 0}), vec({1, 1}), vec({2, 2}), vec({0.5, 0.5})});
  CHECK(h.polytope.size() == 2);
  CHECK(h.affine_dim == 1);
  CHECK(h.degenerate);

  Rng rng(3);
  std::vector<RVector> disc;
  for (int i = 0; i < 100; ++i) {
    const double r = std::sqrt(rng.uniform()), t = rng.uniform(0, 2 * M_PI);
    disc.push_back(vec({r * std::cos(t), r * std::sin(t)}));
  }
  h = convex_hull(disc);
  for (const auto& p : disc) CHECK(contains(h.polytope, p));
  // Every vertex is extreme against the 2D oracle hull of the input.
  std::vector<P2> pts;
  for (const auto& p : disc) pts.push_back({p(0), p(1)});
  CHECK(h.polytope.size() == hull2d(pts).size());
}

TEST_CASE("convex: polytope equality by support") {
  const Polytope sq = square();
  CHECK(polytope_equal_by_support(sq, sq).equal);

  std::vector<RVector> more = sq.vertices();
  more.push_back(vec({2, 0.5}));
  const auto cmp = polytope_equal_by_support(sq, convex_hull(more).polytope);
  REQUIRE_FALSE(cmp.equal);
  REQUIRE(cmp.witness.has_value());
  CHECK(cmp.witness->dot(vec({1, 0})) > 0.0);
  CHECK(cmp.witness_gap > 0.0);

  const Polytope simplex({vec({1, 0, 0}), vec({0, 1, 0}), vec({0, 0, 1})});
  std::vector<RVector> shrunk;
  const RVector bary = RVector::Constant(3, 1.0 / 3.0);
  for (const auto& v : simplex.vertices()) shrunk.push_back(bary + 0.5 * (v - bary));
  CHECK_FALSE(polytope_equal_by_support(simplex, Polytope(shrunk)).equal);
  CHECK(hausdorff_distance(simplex, Polytope(shrunk)) == doctest::Approx(0.5 * (vec({1, 0, 0}) - bary).norm()));
}

TEST_CASE("convex: Weyl polytopes") {
  const Polytope hex = permutohedron(vec({1, 0, -1}));
  CHECK(hex.size() == 6);
  for (const auto& v : hex.vertices()) CHECK(std::abs(v.sum()) < 1e-14);
  CHECK(permutohedron(vec({0.4, 0.4, 0.4})).size() == 1);
  const Polytope seg = permutohedron(vec({1, 0}));
  CHECK(polytope_equal_by_support(seg, Polytope({vec({1, 0}), vec({0, 1})})).equal);

  // W-invariance as a set.
  std::vector<RVector> permuted;
  for (const auto& v : hex.vertices()) permuted.push_back(vec({v(2), v(0), v(1)}));
  CHECK(polytope_equal_by_support(hex, Polytope(permuted)).equal);

  const auto a = AbelianSubalgebra::diagonal(CompatibleGroup::real_special_linear(3));
  CHECK(polytope_equal_by_support(weyl_polytope(a, vec({1, 0, -1})), hex).equal);
}

TEST_CASE("convex: majorization agrees with hull membership") {
  const RVector lambda = vec({2, 0.5, -1});
  CHECK(majorization_membership(lambda, lambda));
  CHECK(majorization_membership(RVector::Constant(3, lambda.mean()), lambda));
  CHECK_THROWS_AS(majorization_membership(vec({1, 1, 1}), lambda), Error);

  const Polytope body3 = permutohedron(lambda);
  std::vector<P2> orbit;
  for (const auto& v : body3.vertices()) orbit.push_back(plane(v));
  const auto h = hull2d(orbit);
  Rng rng(4);
  int checked = 0;
  for (int i = 0; i < 500; ++i) {
    RVector x = 2.0 * rng.real_gaussian(3);
    x.array() += lambda.mean() - x.mean();
    const bool oracle = inside2d(h, plane(x), 0.0);
    // Skip points within rounding of the boundary.
    if (oracle != inside2d(h, plane(x), 1e-9) || oracle != inside2d(h, plane(x), -1e-9)) continue;
    ++checked;
    CHECK(majorization_membership(x, lambda) == oracle);
  }
  CHECK(checked > 450);

  // n = 4 and 5 against Wolfe membership in the orbit hull.
  for (int n : {4, 5}) {
    const RVector l = rng.real_gaussian(n);
    const Polytope body = permutohedron(l);
    for (int i = 0; i < 100; ++i) {
      RVector x = rng.real_gaussian(n);
      x.array() += l.mean() - x.mean();
      const double dist = nearest_point(body, x).distance;
      if (dist < 1e-12) CHECK(majorization_membership(x, l));
      if (dist > 1e-7) CHECK_FALSE(majorization_membership(x, l));
    }
  }
}

TEST_CASE("convex: S# construction") {
  const Polytope single({vec({1, 0, -1})});
  const SharpBody one(single, 0.05);
  CHECK(polytope_equal_by_support(one.sampled_body(), permutohedron(vec({1, 0, -1}))).equal);

  CHECK_THROWS_AS(SharpBody(Polytope({vec({0, 1, -1})}), 0.05), Error);

  const SharpBody seg(Polytope({vec({2, 0, -2}), vec({1, 0, -1})}), 0.05);
  const ConvexityReport rep = sharp_convexity_report(seg, 1000, 5, 1e-9);
  CHECK(rep.pairs == 1000);
  CHECK(rep.violations == 0);

  // Members of S# for this segment: Conv(W lambda) for lambda = (s, 0, -s),
  // s in [1, 2]; the union is the big hexagon minus the open small one.
  CHECK(seg.contains(vec({2, 0, -2})));
  CHECK(seg.contains(vec({1.5, 0, -1.5})));
  CHECK(seg.contains(vec({0, 0, 0})));
  CHECK_FALSE(seg.contains(vec({3, 0, -3})));
}

TEST_CASE("convex: Kostant projections") {
  const auto gl2 = CompatibleGroup::real_general_linear(2);
  const KostantReport r2 = kostant_projection_probe(gl2, testing::real_diag({1, 0}), 200, 6);
  CHECK(r2.majorization_failures == 0);
  CHECK(r2.max_vertex_distance < 1e-3);

  const auto gl3 = CompatibleGroup::real_general_linear(3);
  Rng rng(7);
  const RMatrix m = rng.real_gaussian(9).reshaped(3, 3);
  const CMatrix x = (m + m.transpose()).cast<cplx>();
  const KostantReport r3 = kostant_projection_probe(gl3, x, 500, 8);
  CHECK(r3.majorization_failures == 0);
  CHECK(r3.vertices.size() == 6);
  CHECK(r3.max_vertex_distance < 1e-3);
}

TEST_CASE("convex: fixed-point polytope of the torus") {
  const auto a3 = AbelianSubalgebra::diagonal(CompatibleGroup::positive_diagonal_torus(3));
  const FixedPointPolytope fp = fixed_point_polytope(a3);
  CHECK(fp.fixed_points.size() == 3);
  CHECK(fp.isolated);
  std::vector<RVector> expected;
  for (int j = 0; j < 3; ++j) expected.push_back(a3.coords(testing::real_diag({j == 0 ? .5 : 0., j == 1 ? .5 : 0., j == 2 ? .5 : 0.})));
  CHECK(polytope_equal_by_support(fp.polytope, Polytope(expected)).equal);

  const auto a2 = AbelianSubalgebra::diagonal(CompatibleGroup::positive_diagonal_torus(2));
  CHECK(fixed_point_polytope(a2).polytope.size() == 2);

  Rng rng(9);
  for (int i = 0; i < 1000; ++i)
    CHECK(contains(fp.polytope, gradient_map_abelian(a3, ProjectivePoint(rng.complex_gaussian(3))), 1e-9));
}
