#include "gradmap/kempf_ness.hpp"

#include <algorithm>
#include <cmath>

#include "gradmap/ode.hpp"

namespace gradmap {

namespace {

CMatrix checked_inverse(const CMatrix& g) {
  Eigen::FullPivLU<CMatrix> lu(g);
  if (!lu.isInvertible() || std::abs(lu.determinant()) < 1e-14)
    throw Error(ErrorCode::SingularGroupElement, "group element is not invertible");
  return lu.inverse();
}

}  // namespace

double kn_value(const ProjectivePoint& x, const CMatrix& g) {
  Eigen::FullPivLU<CMatrix> lu(g);
  if (!lu.isInvertible() || std::abs(lu.determinant()) < 1e-14)
    throw Error(ErrorCode::SingularGroupElement, "group element is not invertible");
  return kKempfNessConstant * std::log((g * x.rep()).squaredNorm());
}

double kn_phi(const ProjectivePoint& x, const CMatrix& g) {
  const CVector w = checked_inverse(g) * x.rep();
  return kKempfNessConstant * std::log(w.squaredNorm());
}

KnDerivatives kn_derivatives(const CompatibleGroup& group, const ProjectivePoint& x, const CMatrix& g,
                             const CMatrix& xi) {
  if (frob(xi - group.project_p(xi)) > 1e-9 * std::max(1.0, frob(xi)))
    throw Error(ErrorCode::InputOutsideAlgebra, "direction is not in p");
  const ProjectivePoint y(checked_inverse(g) * x.rep());
  const CVector& u = y.rep();
  const double a = u.dot(xi * u).real();
  const CVector field = xi * u - a * u;
  KnDerivatives d;
  // log |exp(-t xi) u|^2 = -2a t + 2 (|xi u|^2 - a^2) t^2 + O(t^3), times c
  d.first = -2.0 * kKempfNessConstant * a;
  d.second = 4.0 * kKempfNessConstant * field.squaredNorm();
  d.flat = field.norm() < 1e-8;
  return d;
}

SymmetricSpacePoint::SymmetricSpacePoint(const CMatrix& g) : g_(g), p_(g * g.adjoint()) {
  checked_inverse(g);
  p_ = 0.5 * (p_ + p_.adjoint());
}

SymmetricSpacePoint SymmetricSpacePoint::from_form(const CMatrix& p) {
  return SymmetricSpacePoint(hermitian_pow(p, 0.5));
}

double distance(const SymmetricSpacePoint& p, const SymmetricSpacePoint& q) {
  const CMatrix s = hermitian_pow(p.canonical_form(), -0.5);
  return 0.5 * frob(hermitian_log(s * q.canonical_form() * s));
}

SymmetricSpacePoint geodesic(const SymmetricSpacePoint& p, const SymmetricSpacePoint& q, double t) {
  const CMatrix r = hermitian_pow(p.canonical_form(), 0.5);
  const CMatrix s = hermitian_pow(p.canonical_form(), -0.5);
  const CMatrix mid = hermitian_pow(s * q.canonical_form() * s, t);
  return SymmetricSpacePoint::from_form(r * mid * r);
}

SymmetricSpacePoint geodesic_from(const CMatrix& g, const CMatrix& xi, double t) {
  return SymmetricSpacePoint(g * hermitian_exp(t * xi));
}

KnPath kn_flow(const CompatibleGroup& group, const ProjectivePoint& x, const CMatrix& g0, double t_end, int samples,
               double drift_tol, const FlowOptions& opts) {
  const Eigen::Index n = group.n();
  checked_inverse(g0);
  const CVector v = x.rep();

  OdeRhs rhs = [&](double, const RVector& y, RVector& dy) {
    const CMatrix g = unrealify(y, n, n);
    const ProjectivePoint shadow(g.partialPivLu().solve(v));
    dy = realify(CMatrix(g * gradient_map(group, shadow)));
  };

  OdeOptions o;
  o.rtol = opts.rtol;
  o.atol = opts.atol;
  o.max_step = opts.max_step;

  KnPath path;
  RVector y = realify(g0);
  ProjectivePoint reference(checked_inverse(g0) * v);
  const int steps = std::max(1, samples);
  const double dt = t_end / steps;
  for (int k = 0; k <= steps; ++k) {
    const double t = k * dt;
    if (k > 0) {
      o.initial_step = std::min(dt, opts.max_step);
      y = integrate_adaptive(rhs, y, t - dt, t, o).y;
      reference = flow_to_time(group, reference, dt, opts);
    }
    const CMatrix g = unrealify(y, n, n);
    const ProjectivePoint shadow(g.partialPivLu().solve(v));
    path.times.push_back(t);
    path.elements.push_back(g);
    path.phi.push_back(kn_phi(x, g));
    path.shadow.push_back(shadow);
    path.coupling_residual = std::max(path.coupling_residual, fs_distance(shadow, reference));
    if (k > 0)
      path.max_phi_increase = std::max(path.max_phi_increase, path.phi[k] - path.phi[k - 1]);
  }
  if (path.coupling_residual > drift_tol)
    throw Error(ErrorCode::DriftExceeded, "kn_flow coupling residual " + std::to_string(path.coupling_residual));
  return path;
}

PairedFlowReport paired_flow_distance_monotonicity(const CompatibleGroup& group, const ProjectivePoint& x,
                                                   const CMatrix& g0, const CMatrix& h0, double t_end, int samples,
                                                   const FlowOptions& opts) {
  const KnPath a = kn_flow(group, x, g0, t_end, samples, 1e-6, opts);
  const KnPath b = kn_flow(group, x, h0, t_end, samples, 1e-6, opts);
  PairedFlowReport rep;
  rep.times = a.times;
  for (std::size_t k = 0; k < a.times.size(); ++k) {
    rep.rho.push_back(distance(a.point(k), b.point(k)));
    if (k > 0) rep.max_increase = std::max(rep.max_increase, rep.rho[k] - rep.rho[k - 1]);
  }
  return rep;
}

MorseBottReport kn_morse_bott_probe(const CompatibleGroup& group, const ProjectivePoint& x, double t_end,
                                    const FlowOptions& opts) {
  const int n = group.n();
  CMatrix g = CMatrix::Identity(n, n);
  if (frob(gradient_map(group, x)) > 1e-10) {
    const KnPath path = kn_flow(group, x, g, t_end, 400, 1e-6, opts);
    g = path.elements.back();
  }
  const ProjectivePoint y(g.partialPivLu().solve(x.rep()));
  if (frob(gradient_map(group, y)) > 1e-9)
    throw Error(ErrorCode::NoCriticalPointFound, "|mu_p| = " + std::to_string(frob(gradient_map(group, y))));

  MorseBottReport rep;
  rep.critical_element = g;
  const auto& basis = group.p_basis();
  const Eigen::Index m = static_cast<Eigen::Index>(basis.size());

  auto along = [&](const CMatrix& xi, double t) { return kn_phi(x, g * hermitian_exp(t * xi)); };
  auto second = [&](const CMatrix& xi) {
    const double f0 = along(xi, 0.0);
    auto central = [&](double h) { return (along(xi, h) - 2.0 * f0 + along(xi, -h)) / (h * h); };
    constexpr double h = 1e-3;
    return (4.0 * central(0.5 * h) - central(h)) / 3.0;
  };
  RMatrix hess(m, m);
  for (Eigen::Index i = 0; i < m; ++i) hess(i, i) = second(basis[static_cast<std::size_t>(i)]);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = i + 1; j < m; ++j) {
      const CMatrix& a = basis[static_cast<std::size_t>(i)];
      const CMatrix& b = basis[static_cast<std::size_t>(j)];
      hess(i, j) = hess(j, i) = 0.25 * (second(a + b) - second(a - b));
    }

  Eigen::SelfAdjointEigenSolver<RMatrix> es(hess);
  rep.hessian_eigenvalues = es.eigenvalues();
  std::vector<Eigen::Index> kernel_cols;
  rep.min_positive = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    if (std::abs(es.eigenvalues()[i]) < 1e-6)
      kernel_cols.push_back(i);
    else if (rep.min_positive == 0.0 || es.eigenvalues()[i] < rep.min_positive)
      rep.min_positive = es.eigenvalues()[i];
  }
  rep.kernel_dim = static_cast<int>(kernel_cols.size());
  RMatrix kernel(m, rep.kernel_dim);
  for (int c = 0; c < rep.kernel_dim; ++c) kernel.col(c) = es.eigenvectors().col(kernel_cols[static_cast<std::size_t>(c)]);

  const auto frame = tangent_frame(y);
  const RMatrix stab = null_space(orbit_directions(basis, y, frame), 1e-8);
  rep.stabilizer_dim = static_cast<int>(stab.cols());
  if (rep.kernel_dim != rep.stabilizer_dim) {
    rep.agree = false;
    rep.max_angle = M_PI / 2;
    return rep;
  }
  const RVector angles = principal_angles(kernel, stab);
  rep.max_angle = angles.size() ? angles.maxCoeff() : 0.0;
  rep.agree = rep.max_angle < 1e-4 && es.eigenvalues().minCoeff() > -1e-6;
  return rep;
}

}  // namespace gradmap
