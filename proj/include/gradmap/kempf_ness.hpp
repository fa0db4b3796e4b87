#pragma once

#include <vector>

#include "gradmap/core.hpp"
#include "gradmap/flow.hpp"
#include "gradmap/lie.hpp"
#include "gradmap/projective.hpp"

namespace gradmap {

/// c in Phi(x, g) = c log(|g v|^2 / |v|^2). Fixed by requiring
/// d/dt Phi(x, exp(t xi)) at 0 to equal <mu_p(x), xi>.
inline constexpr double kKempfNessConstant = 0.25;

/// Phi(x, g). Throws SingularGroupElement if g is not invertible.
double kn_value(const ProjectivePoint& x, const CMatrix& g);

/// Phi_x(gK) = Phi(x, g^{-1}).
double kn_phi(const ProjectivePoint& x, const CMatrix& g);

struct KnDerivatives {
  double first = 0.0;   // = -<mu_p(g^{-1} x), xi>
  double second = 0.0;  // = |xi_X(g^{-1} x)|^2
  bool flat = false;    // second derivative vanishes: |xi_X(g^{-1} x)| < 1e-8
};

/// Analytic derivatives at t = 0 of t -> Phi_x(pi(g exp(t xi))), xi in p.
/// Throws InputOutsideAlgebra if xi is not in p.
KnDerivatives kn_derivatives(const CompatibleGroup& group, const ProjectivePoint& x, const CMatrix& g,
                             const CMatrix& xi);

/// A point gK of M = G/K, represented by P = g g^*, which is constant on cosets.
class SymmetricSpacePoint {
 public:
  explicit SymmetricSpacePoint(const CMatrix& g);
  /// Point with canonical form P (positive definite); the coset
  /// representative is P^{1/2}.
  static SymmetricSpacePoint from_form(const CMatrix& p);

  const CMatrix& coset_rep() const { return g_; }
  const CMatrix& canonical_form() const { return p_; }
  bool same_coset(const SymmetricSpacePoint& other, double tol = 1e-10) const {
    return frob(p_ - other.p_) <= tol * std::max(1.0, frob(p_));
  }

 private:
  CMatrix g_;
  CMatrix p_;
};

/// (1/2) |log(P^{-1/2} Q P^{-1/2})|_F, normalized so that d(pi(I), pi(exp beta)) = |beta|.
double distance(const SymmetricSpacePoint& p, const SymmetricSpacePoint& q);

/// Point at parameter t in [0, 1] on the geodesic from p to q.
SymmetricSpacePoint geodesic(const SymmetricSpacePoint& p, const SymmetricSpacePoint& q, double t);

/// pi(g exp(t xi)) for xi in p.
SymmetricSpacePoint geodesic_from(const CMatrix& g, const CMatrix& xi, double t);

struct KnPath {
  std::vector<double> times;
  std::vector<CMatrix> elements;         // g(t)
  std::vector<double> phi;               // Phi_x(pi(g(t)))
  std::vector<ProjectivePoint> shadow;   // g(t)^{-1} x
  double coupling_residual = 0.0;        // max distance shadow vs X-flow from g0^{-1} x
  double max_phi_increase = 0.0;

  SymmetricSpacePoint point(std::size_t k) const { return SymmetricSpacePoint(elements[k]); }
};

/// Integrates g' = g mu_p(g^{-1} x) from g0 and samples it on a uniform grid of
/// `samples` + 1 times in [0, t_end], comparing g^{-1} x with the X-flow from
/// g0^{-1} x at every grid time. Throws DriftExceeded above `drift_tol`.
KnPath kn_flow(const CompatibleGroup& group, const ProjectivePoint& x, const CMatrix& g0, double t_end,
               int samples = 200, double drift_tol = 1e-6, const FlowOptions& opts = {});

struct PairedFlowReport {
  std::vector<double> times;
  std::vector<double> rho;
  double max_increase = 0.0;
};

/// rho(t) = d(gamma_1(t), gamma_2(t)) for the kn_flows from g0 and h0.
PairedFlowReport paired_flow_distance_monotonicity(const CompatibleGroup& group, const ProjectivePoint& x,
                                                   const CMatrix& g0, const CMatrix& h0, double t_end,
                                                   int samples = 200, const FlowOptions& opts = {});

struct MorseBottReport {
  CMatrix critical_element;  // g with mu_p(g^{-1} x) = 0
  RVector hessian_eigenvalues;
  int kernel_dim = 0;
  int stabilizer_dim = 0;
  double max_angle = 0.0;
  double min_positive = 0.0;
  bool agree = false;
};

/// Follows the kn_flow from the identity to a critical coset and compares the
/// kernel of the geodesic Hessian of Phi_x there (finite differences) with the
/// stabilizer directions {xi in p : xi_X(g^{-1} x) = 0}. Throws
/// NoCriticalPointFound if |mu_p(g^{-1} x)| stays above 1e-9.
MorseBottReport kn_morse_bott_probe(const CompatibleGroup& group, const ProjectivePoint& x, double t_end = 400.0,
                                    const FlowOptions& opts = {});

}  // namespace gradmap
