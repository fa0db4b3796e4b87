#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gradmap/core.hpp"
#include "gradmap/lie.hpp"
#include "gradmap/projective.hpp"

namespace gradmap {

/// Projects an ambient horizontal vector w at the unit representative v onto
/// the tangent space of a submanifold X. Empty means X is the whole space.
using TangentProjector = std::function<CVector(const CVector& v, const CVector& w)>;

/// Samples a point of X.
using PointSampler = std::function<ProjectivePoint(Rng&)>;

struct FlowOptions {
  double eps_grad = 1e-10;
  int sustain_steps = 10;
  double t_max = 1e4;
  double rtol = 1e-10;
  double atol = 1e-10;
  double max_step = 0.1;
  double lyapunov_slack = 1e-8;
  /// +1 follows -grad f, -1 follows +grad f.
  int direction = 1;
  TangentProjector projector;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<CVector> states;
  std::vector<double> f_values;
  std::vector<double> grad_norms;
  std::optional<ProjectivePoint> limit;
  CMatrix limit_beta;
  /// min over steps of (f_k - f_{k+1}), sign-adjusted for ascent.
  double min_decrease = 0.0;

  bool converged() const { return limit.has_value(); }
  ProjectivePoint terminal() const { return ProjectivePoint(states.back()); }
};

/// -beta_X(x) with beta = mu_p(x), optionally projected onto T_x X.
CVector flow_field(const CompatibleGroup& group, const CVector& v, const TangentProjector& projector = {});

/// Integrates the negative gradient flow of f = 1/2 |mu_p|^2 on the unit
/// sphere with renormalization. Throws LyapunovViolation when f increases by
/// more than `lyapunov_slack` between accepted steps, and StepUnderflow from
/// the integrator. Non-convergence by t_max leaves `limit` empty.
Trajectory integrate_flow(const CompatibleGroup& group, const ProjectivePoint& x0, const FlowOptions& opts = {});

/// Point reached at exactly time t by the same flow (no early stop).
ProjectivePoint flow_to_time(const CompatibleGroup& group, const ProjectivePoint& x0, double t,
                             const FlowOptions& opts = {});

/// Writes the trajectory as CSV: t, f, grad_norm, then re/im of each coordinate.
void write_trajectory_csv(const Trajectory& traj, const std::string& path);

struct GroupLift {
  std::vector<CMatrix> elements;  // g(t_k) at the trajectory's stored times
  double max_drift = 0.0;         // max d(g^{-1} x0, x(t_k))
  double max_det_error = 0.0;     // max |det g - 1|
};

/// Integrates g' = g mu_p(x(t)), g(0) = I, alongside the flow, between the
/// trajectory's stored times. Throws DriftExceeded if some g(t)^{-1} x0 is
/// farther than `drift_tol` from x(t).
GroupLift group_lift(const CompatibleGroup& group, const ProjectivePoint& x0, const Trajectory& traj,
                     double drift_tol = 1e-6, const FlowOptions& opts = {});

struct LojasiewiczReport {
  double T = 0.0;
  int tail_samples = 0;
  double psi_fit = 0.0;
  double C_fit = 0.0;
  /// max over the tail of d(x(t), x_inf) - C/(t-T)^psi (<= 0 when the bound holds).
  double bound_residual = 0.0;
  /// max over stored times of d(x(t), x_inf) - (remaining path length).
  double arc_residual = 0.0;
  double min_decrease = 0.0;
  std::optional<double> gamma_fit;
  bool gamma_ok = true;
};

/// Tail fits for a converged trajectory. Throws InsufficientTail when fewer than
/// 50 tail samples remain.
LojasiewiczReport lojasiewicz_diagnostics(const Trajectory& traj);

struct CriticalComponent {
  ProjectivePoint representative;
  double f_value = 0.0;
  RVector spectrum;  // descending eigenvalues of mu_p
  HessianSignature hessian_signature;
  RVector hessian_eigenvalues;
  std::vector<ProjectivePoint> members;
};

struct ComponentSearchOptions {
  int seed_count = 32;
  std::uint64_t rng_seed = 0;
  bool ascent = true;  // also follow +grad f from every seed
  double f_tol = 1e-8;
  double spectrum_tol = 1e-6;
  FlowOptions flow;
  PointSampler sampler;  // FS-uniform on P(C^n) when empty
};

/// Clusters flow limits by (f, spectrum); components are ordered by f.
std::vector<CriticalComponent> find_critical_components(const CompatibleGroup& group,
                                                        const ComponentSearchOptions& opts);

struct StratumLabel {
  RVector beta_plus;
  double f_value = 0.0;
};

bool same_label(const StratumLabel& a, const StratumLabel& b, double tol = 1e-6);

/// Label of the stratum through x: chamber label of mu_p at the flow limit.
/// Throws NoCriticalPointFound if the flow does not converge.
StratumLabel classify_stratum(const AbelianSubalgebra& a, const ProjectivePoint& x, const FlowOptions& opts = {});

struct OpennessReport {
  int probes = 0;
  int same_label = 0;
  double fraction() const { return probes ? static_cast<double>(same_label) / probes : 1.0; }
};

/// Perturbs random members of `component` by geodesic steps of length
/// `radius` in random tangent directions and re-classifies.
OpennessReport min_stratum_openness_check(const AbelianSubalgebra& a, const CriticalComponent& component,
                                          int n_probe, double radius, std::uint64_t rng_seed,
                                          const FlowOptions& opts = {});

struct RetractionReport {
  int samples = 0;
  double max_limit_mu = 0.0;          // (i)
  double max_equivariance_error = 0.0;  // (ii)
  double max_fixed_motion = 0.0;      // (iii)
  int unconverged = 0;
};

RetractionReport retraction_check(const CompatibleGroup& group, int n_samples, std::uint64_t rng_seed,
                                  const FlowOptions& opts = {}, const PointSampler& sampler = {});

struct KOrbitDistance {
  double distance = 0.0;
  CMatrix best_k;
};

/// min over k in K of d(k x, y), by damped Gauss-Newton on the residual
/// (1 - y y^*) k v from the identity and `restarts - 1` random starts.
KOrbitDistance k_orbit_distance(const CompatibleGroup& group, const ProjectivePoint& x, const ProjectivePoint& y,
                                int restarts, Rng& rng);

enum class OrbitVerdict { Same, Different, Inconclusive };
const char* to_string(OrbitVerdict v);

struct NessReport {
  int samples = 0;
  int unconverged = 0;
  double f_spread = 0.0;
  double spectrum_spread = 0.0;
  double max_orbit_distance = 0.0;
  int same = 0;
  int different = 0;
  int inconclusive = 0;
  std::vector<double> limit_f;
};

/// Flows g x0 for random g = k exp(xi), |xi| <= 2, and compares the limits.
NessReport ness_uniqueness_experiment(const CompatibleGroup& group, const ProjectivePoint& x0, int n_group_samples,
                                      std::uint64_t rng_seed, const FlowOptions& opts = {});

struct CensusComponent {
  double eigenvalue = 0.0;  // value of beta on the fixed subspace
  int dim = 0;              // real dimension of the component
  int index = 0;            // negativity index of Hess mu_p^beta
  ProjectivePoint representative;
  int basin_count = 0;
};

struct CensusReport {
  std::vector<CensusComponent> components;  // ordered by eigenvalue, descending
  int seeds = 0;
  int unassigned = 0;
  /// Component with index + dim = dim X; -1 if none.
  int open_component = -1;
};

/// Limits of exp(t beta) x as t -> +infinity in closed form, grouped by the
/// eigenspaces of beta.
CensusReport unstable_manifold_census(const CompatibleGroup& group, const CMatrix& beta, int seed_count,
                                      std::uint64_t rng_seed);

/// FS-uniform point of P(C^n).
ProjectivePoint sample_uniform(int n, Rng& rng);

}  // namespace gradmap
