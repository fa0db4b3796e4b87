#pragma once

#include <vector>

#include "gradmap/core.hpp"
#include "gradmap/lie.hpp"

namespace gradmap {

/// A point [v] of P(C^n), stored as a unit representative. Equality ignores
/// the global phase.
class ProjectivePoint {
 public:
  explicit ProjectivePoint(const CVector& v);

  const CVector& rep() const { return rep_; }
  int dim() const { return static_cast<int>(rep_.size()); }
  bool same_as(const ProjectivePoint& other, double tol = 1e-10) const;

 private:
  CVector rep_;
};

/// Fubini-Study geodesic distance, arctan form (accurate for nearby points).
double fs_distance(const ProjectivePoint& a, const ProjectivePoint& b);

/// [g v].
ProjectivePoint act(const CMatrix& g, const ProjectivePoint& x);

/// Horizontal vector at a point: <vec, base.rep> = 0.
class TangentVector {
 public:
  /// Throws InvalidArgument if `vec` is not horizontal to 1e-12.
  TangentVector(ProjectivePoint base, CVector vec);
  /// Projects an arbitrary vector onto the horizontal space.
  static TangentVector horizontal(const ProjectivePoint& base, const CVector& w);

  const ProjectivePoint& base() const { return base_; }
  const CVector& vec() const { return vec_; }
  double norm() const { return vec_.norm(); }

 private:
  ProjectivePoint base_;
  CVector vec_;
};

/// (v, w) = Re <v, w>.
double fs_inner(const TangentVector& v, const TangentVector& w);
/// omega(v, w) = Im(v^* w), so that (v, w) = omega(v, J w).
double kahler_form(const TangentVector& v, const TangentVector& w);
/// J: multiplication by i.
TangentVector complex_structure(const TangentVector& v);

/// xi_Z(x) = xi v - <xi v, v> v.
TangentVector fundamental_field(const CMatrix& xi, const ProjectivePoint& x);

/// Moment map of U(n) on P(C^n): mu(x) = -(i/2) v v^*, an element of u(n).
CMatrix moment_map(const ProjectivePoint& x);
/// mu^xi(x) = <mu(x), xi>.
double moment_component(const ProjectivePoint& x, const CMatrix& xi);

/// mu_p(x) = orthogonal projection of i mu(x) = (1/2) v v^* onto p.
CMatrix gradient_map(const CompatibleGroup& group, const ProjectivePoint& x);
/// mu_p^beta(x) = <mu_p(x), beta>.
double gradient_component(const CompatibleGroup& group, const ProjectivePoint& x, const CMatrix& beta);
/// mu_a(x), in the coordinates of a.basis().
RVector gradient_map_abelian(const AbelianSubalgebra& a, const ProjectivePoint& x);

/// f(x) = 1/2 ||mu_p(x)||^2.
double norm_square(const CompatibleGroup& group, const ProjectivePoint& x);
/// grad f(x) = beta_X(x) with beta = mu_p(x).
TangentVector grad_norm_square(const CompatibleGroup& group, const ProjectivePoint& x);

/// Orthonormal real frame of T_x P(C^n) (2(n-1) vectors), built from the
/// standard basis and its i-multiples, projected horizontally, Gram-Schmidt
/// in a fixed order.
std::vector<CVector> tangent_frame(const ProjectivePoint& x);

/// Fubini-Study geodesic t -> [cos(t|w|) v + sin(t|w|) w/|w|].
ProjectivePoint geodesic(const TangentVector& w, double t);

/// Matrix of d mu_p(x) from a real tangent frame to p coordinates.
RMatrix dmu_matrix(const CompatibleGroup& group, const ProjectivePoint& x, const std::vector<CVector>& frame);

/// A symmetric operator on T_x expressed in an orthonormal real frame.
struct TangentOperator {
  std::vector<CVector> frame;
  RMatrix matrix;

  RVector eigenvalues() const;
  RMatrix eigenvectors() const;
  /// Quadratic form evaluated on a tangent vector at the same base point.
  double quadratic_form(const CVector& w) const;
  CVector to_vector(const RVector& coeffs) const;
  RVector to_coeffs(const CVector& w) const;
};

/// Analytic linearization of beta_X at x (linear action): w -> horizontal
/// part of (beta - <v, beta v>) w.
TangentOperator field_linearization(const CMatrix& beta, const ProjectivePoint& x);

/// Hessian of mu_p^beta at a critical point, by symmetrized Richardson
/// second differences along geodesics. Throws NotCritical.
TangentOperator hessian_mu_beta(const CompatibleGroup& group, const CMatrix& beta, const ProjectivePoint& x,
                                double critical_tol = 1e-7);
/// Hessian of f at a critical point (same scheme). Throws NotCritical.
TangentOperator hessian_f(const CompatibleGroup& group, const ProjectivePoint& x, double critical_tol = 1e-7);

struct HessianSignature {
  int negative = 0;
  int zero = 0;
  int positive = 0;
};
HessianSignature signature(const RVector& eigenvalues, double tol = 1e-6);

struct KernelReport {
  int tangent_dim = 0;
  int kernel_dim = 0;
  int orbit_dim = 0;  // dim p.x
  double max_angle = 0.0;
  bool agree = false;
};

/// Compares ker d mu_p(x) with (p.x)^perp.
KernelReport dmu_kernel_check(const CompatibleGroup& group, const ProjectivePoint& x, double angle_tol = 1e-8);

/// Span of {xi_X(x) : xi in basis}, in frame coordinates (columns).
RMatrix orbit_directions(const std::vector<CMatrix>& basis, const ProjectivePoint& x, const std::vector<CVector>& frame);

}  // namespace gradmap
