#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gradmap/core.hpp"
#include "gradmap/lie.hpp"
#include "gradmap/projective.hpp"

namespace gradmap {

/// A polytope given by its vertex list. Construct through convex_hull to get
/// an irredundant list; the constructor itself only checks dimensions.
class Polytope {
 public:
  Polytope() = default;
  explicit Polytope(std::vector<RVector> vertices);

  int dim() const { return dim_; }
  const std::vector<RVector>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  bool empty() const { return vertices_.empty(); }
  /// Vertices as the columns of a d x m matrix.
  RMatrix matrix() const;

 private:
  int dim_ = 0;
  std::vector<RVector> vertices_;
};

struct NearestPoint {
  RVector point;
  RVector weights;  // convex weights over the input columns
  double distance = 0.0;
};

/// Closest point of conv(columns of `points`) to `target` (Wolfe's
/// minimum-norm-point algorithm).
NearestPoint nearest_point(const RMatrix& points, const RVector& target);
NearestPoint nearest_point(const Polytope& poly, const RVector& target);

bool contains(const Polytope& poly, const RVector& x, double tol = 1e-9);

/// h_E(u) = max over vertices of <v, u>.
double support_function(const Polytope& poly, const RVector& u);

/// Hull of the vertices attaining h_E(u) within `tol`. Throws ZeroDirection.
Polytope exposed_face(const Polytope& poly, const RVector& u, double tol = 1e-10);

struct HullResult {
  Polytope polytope;
  std::vector<std::size_t> vertex_indices;  // into the input, ascending
  int affine_dim = 0;
  RVector origin;       // a point of the affine hull
  RMatrix affine_basis; // orthonormal columns spanning its direction
  bool degenerate = false;  // affine_dim < ambient dimension
};

/// Extreme points of a finite point set: Clarkson's output-sensitive filter,
/// computed inside the affine hull.
HullResult convex_hull(const std::vector<RVector>& points, double tol = 1e-9);

struct PolytopeComparison {
  bool equal = false;
  /// When not equal: a direction with different support values.
  std::optional<RVector> witness;
  /// h_{second}(witness) - h_{first}(witness).
  double witness_gap = 0.0;
  double hausdorff = 0.0;
  double max_support_gap = 0.0;
};

/// Decides C1 = C2 up to `slack` by mutual vertex containment, which is
/// equivalent to equal support functions on every facet normal.
PolytopeComparison polytope_equal_by_support(const Polytope& c1, const Polytope& c2, double slack = 1e-9);

/// Hausdorff distance between two polytopes (attained at vertices).
double hausdorff_distance(const Polytope& a, const Polytope& b);

/// Hull of all coordinate permutations of lambda.
Polytope permutohedron(const RVector& lambda);

/// Conv(W lambda) in diag coordinates. Throws UnsupportedKind when the Weyl
/// group of `a` is not available.
Polytope weyl_polytope(const AbelianSubalgebra& a, const RVector& lambda);

/// min over k < n of (top-k sum of lambda - top-k sum of x), combined with
/// -|sum x - sum lambda|. Nonnegative up to rounding iff x lies in Conv(S_n lambda).
double majorization_margin(const RVector& x, const RVector& lambda);

/// x in Conv(S_n lambda). Throws SumMismatch when the coordinate sums differ
/// by more than 1e-9.
bool majorization_membership(const RVector& x, const RVector& lambda, double tol = 1e-9);

/// S# = union of Conv(W lambda) over lambda in S, for polytopal S in the
/// closed chamber (weakly decreasing coordinates).
class SharpBody {
 public:
  /// Throws ChamberViolation if some vertex of s is not weakly decreasing.
  SharpBody(Polytope s, double resolution);

  const Polytope& generators() const { return s_; }
  double resolution() const { return resolution_; }

  /// max over lambda in S of majorization_margin(x, lambda): best grid point,
  /// then refined exactly over S.
  double margin(const RVector& x, RVector* best_lambda = nullptr) const;
  bool contains(const RVector& x, double tol = 1e-9) const { return margin(x) >= -tol; }

  /// Hull of W ext(S).
  Polytope sampled_body() const;

  /// A random member: random lambda in S, random point of Conv(W lambda).
  RVector sample_member(Rng& rng) const;

 private:
  Polytope s_;
  double resolution_;
  std::vector<RVector> grid_;
  std::vector<RVector> grid_weights_;
};

struct ConvexityReport {
  int pairs = 0;
  int violations = 0;
  double worst_margin = 0.0;
};

/// Midpoints of random member pairs must remain members within `slack`.
ConvexityReport sharp_convexity_report(const SharpBody& body, int pairs, std::uint64_t rng_seed, double slack);

struct KostantReport {
  int samples = 0;
  int majorization_failures = 0;
  double worst_margin = 0.0;
  std::vector<RVector> vertices;
  std::vector<double> vertex_distances;  // after optimization over K
  double max_vertex_distance = 0.0;
};

/// Projects Ad(k) x onto the diagonal for Haar-random k in K and checks
/// majorization against the spectrum of x; then drives diag(Ad(k) x) to each
/// vertex w lambda by Levenberg-Marquardt over K.
KostantReport kostant_projection_probe(const CompatibleGroup& group, const CMatrix& x, int n_samples,
                                       std::uint64_t rng_seed);

struct FixedPointPolytope {
  Polytope polytope;
  std::vector<ProjectivePoint> fixed_points;  // one per fixed projective subspace
  std::vector<RVector> images;                // mu_a at each fixed point
  bool isolated = true;
};

/// Fixed points of A = exp(a) on P(C^n) for diagonal a, their mu_a images and
/// the hull. With coinciding weights, each fixed subspace is listed once.
FixedPointPolytope fixed_point_polytope(const AbelianSubalgebra& a);

}  // namespace gradmap
