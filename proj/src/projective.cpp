#include "gradmap/projective.hpp"

#include <cmath>
#include <functional>

namespace gradmap {

ProjectivePoint::ProjectivePoint(const CVector& v) {
  const double n = v.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw Error(ErrorCode::InvalidArgument, "zero or non-finite representative");
  rep_ = v / n;
}

bool ProjectivePoint::same_as(const ProjectivePoint& other, double tol) const {
  if (other.dim() != dim()) return false;
  return fs_distance(*this, other) <= tol;
}

double fs_distance(const ProjectivePoint& a, const ProjectivePoint& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::InvalidArgument, "dimension mismatch");
  const cplx c = a.rep().dot(b.rep());  // conj(a)^T b
  const double sin_part = (b.rep() - c * a.rep()).norm();
  return std::atan2(sin_part, std::abs(c));
}

ProjectivePoint act(const CMatrix& g, const ProjectivePoint& x) { return ProjectivePoint(g * x.rep()); }

TangentVector::TangentVector(ProjectivePoint base, CVector vec) : base_(std::move(base)), vec_(std::move(vec)) {
  if (vec_.size() != base_.rep().size()) throw Error(ErrorCode::InvalidArgument, "dimension mismatch");
  if (std::abs(base_.rep().dot(vec_)) > 1e-12 * std::max(1.0, vec_.norm()))
    throw Error(ErrorCode::InvalidArgument, "tangent vector is not horizontal");
}

TangentVector TangentVector::horizontal(const ProjectivePoint& base, const CVector& w) {
  const CVector& v = base.rep();
  CVector h = w - v.dot(w) * v;
  h -= v.dot(h) * v;
  return TangentVector(base, h);
}

double fs_inner(const TangentVector& v, const TangentVector& w) {
  if (!v.base().same_as(w.base(), 1e-12) || std::abs(v.base().rep().dot(w.base().rep()) - 1.0) > 1e-12)
    throw Error(ErrorCode::BasePointMismatch, "tangent vectors live at different points");
  return v.vec().dot(w.vec()).real();
}

double kahler_form(const TangentVector& v, const TangentVector& w) {
  if (!v.base().same_as(w.base(), 1e-12) || std::abs(v.base().rep().dot(w.base().rep()) - 1.0) > 1e-12)
    throw Error(ErrorCode::BasePointMismatch, "tangent vectors live at different points");
  return v.vec().dot(w.vec()).imag();
}

TangentVector complex_structure(const TangentVector& v) { return TangentVector(v.base(), kI * v.vec()); }

TangentVector fundamental_field(const CMatrix& xi, const ProjectivePoint& x) {
  const CVector& v = x.rep();
  return TangentVector::horizontal(x, xi * v);
}

CMatrix moment_map(const ProjectivePoint& x) {
  const CVector& v = x.rep();
  return (-0.5 * kI) * (v * v.adjoint());
}

double moment_component(const ProjectivePoint& x, const CMatrix& xi) { return inner(moment_map(x), xi); }

CMatrix gradient_map(const CompatibleGroup& group, const ProjectivePoint& x) {
  const CVector& v = x.rep();
  // <(1/2) v v^*, p> = (1/2) Re(v^* p v) for Hermitian p
  RVector c(group.dim_p());
  for (int i = 0; i < group.dim_p(); ++i) c[i] = 0.5 * v.dot(group.p_basis()[i] * v).real();
  return group.from_p_coords(c);
}

double gradient_component(const CompatibleGroup& group, const ProjectivePoint& x, const CMatrix& beta) {
  return inner(gradient_map(group, x), beta);
}

RVector gradient_map_abelian(const AbelianSubalgebra& a, const ProjectivePoint& x) {
  return a.coords(gradient_map(a.parent(), x));
}

double norm_square(const CompatibleGroup& group, const ProjectivePoint& x) {
  const CMatrix mu = gradient_map(group, x);
  return 0.5 * inner(mu, mu);
}

TangentVector grad_norm_square(const CompatibleGroup& group, const ProjectivePoint& x) {
  return fundamental_field(gradient_map(group, x), x);
}

std::vector<CVector> tangent_frame(const ProjectivePoint& x) {
  const int n = x.dim();
  const CVector& v = x.rep();
  std::vector<CVector> frame;
  std::vector<CVector> candidates;
  for (int j = 0; j < n; ++j) {
    CVector e = CVector::Zero(n);
    e[j] = 1.0;
    candidates.push_back(e);
    candidates.push_back(kI * e);
  }
  for (const auto& c : candidates) {
    CVector h = c - v.dot(c) * v;
    for (int pass = 0; pass < 2; ++pass) {
      h -= v.dot(h) * v;
      for (const auto& q : frame) h -= q.dot(h).real() * q;
    }
    const double nh = h.norm();
    if (nh > 1e-8) frame.push_back(h / nh);
    if (static_cast<int>(frame.size()) == 2 * (n - 1)) break;
  }
  return frame;
}

ProjectivePoint geodesic(const TangentVector& w, double t) {
  const double nw = w.norm();
  if (nw == 0.0) return w.base();
  return ProjectivePoint(std::cos(t * nw) * w.base().rep() + std::sin(t * nw) * (w.vec() / nw));
}

RMatrix dmu_matrix(const CompatibleGroup& group, const ProjectivePoint& x, const std::vector<CVector>& frame) {
  const CVector& v = x.rep();
  RMatrix m(group.dim_p(), static_cast<Eigen::Index>(frame.size()));
  for (std::size_t j = 0; j < frame.size(); ++j) {
    const CMatrix d = 0.5 * (frame[j] * v.adjoint() + v * frame[j].adjoint());
    m.col(static_cast<Eigen::Index>(j)) = group.p_coords(d);
  }
  return m;
}

RVector TangentOperator::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<RMatrix> es(matrix);
  return es.eigenvalues();
}

RMatrix TangentOperator::eigenvectors() const {
  Eigen::SelfAdjointEigenSolver<RMatrix> es(matrix);
  return es.eigenvectors();
}

CVector TangentOperator::to_vector(const RVector& coeffs) const {
  CVector w = CVector::Zero(frame.empty() ? 0 : frame[0].size());
  for (std::size_t i = 0; i < frame.size(); ++i) w += coeffs[static_cast<Eigen::Index>(i)] * frame[i];
  return w;
}

RVector TangentOperator::to_coeffs(const CVector& w) const {
  RVector c(static_cast<Eigen::Index>(frame.size()));
  for (std::size_t i = 0; i < frame.size(); ++i) c[static_cast<Eigen::Index>(i)] = frame[i].dot(w).real();
  return c;
}

double TangentOperator::quadratic_form(const CVector& w) const {
  const RVector c = to_coeffs(w);
  return c.dot(matrix * c);
}

TangentOperator field_linearization(const CMatrix& beta, const ProjectivePoint& x) {
  TangentOperator op;
  op.frame = tangent_frame(x);
  const CVector& v = x.rep();
  const cplx c = v.dot(beta * v);
  const auto m = static_cast<Eigen::Index>(op.frame.size());
  op.matrix.resize(m, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    CVector img = beta * op.frame[j] - c * op.frame[j];
    img -= v.dot(img) * v;
    for (Eigen::Index i = 0; i < m; ++i) op.matrix(i, j) = op.frame[i].dot(img).real();
  }
  return op;
}

namespace {

/// d^2/dt^2 F(geodesic(w, t)) at 0, Richardson-refined central differences.
double second_derivative_along(const std::function<double(const ProjectivePoint&)>& fn, const TangentVector& w) {
  constexpr double h = 1e-4;
  const double f0 = fn(w.base());
  auto central = [&](double step) {
    return (fn(geodesic(w, step)) - 2.0 * f0 + fn(geodesic(w, -step))) / (step * step);
  };
  const double coarse = central(h);
  const double fine = central(0.5 * h);
  return (4.0 * fine - coarse) / 3.0;
}

TangentOperator finite_difference_hessian(const std::function<double(const ProjectivePoint&)>& fn,
                                          const ProjectivePoint& x) {
  TangentOperator op;
  op.frame = tangent_frame(x);
  const auto m = static_cast<Eigen::Index>(op.frame.size());
  op.matrix.resize(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    op.matrix(i, i) = second_derivative_along(fn, TangentVector(x, op.frame[i]));
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = i + 1; j < m; ++j) {
      const double plus = second_derivative_along(fn, TangentVector(x, op.frame[i] + op.frame[j]));
      const double minus = second_derivative_along(fn, TangentVector(x, op.frame[i] - op.frame[j]));
      op.matrix(i, j) = op.matrix(j, i) = 0.25 * (plus - minus);
    }
  return op;
}

}  // namespace

TangentOperator hessian_mu_beta(const CompatibleGroup& group, const CMatrix& beta, const ProjectivePoint& x,
                                double critical_tol) {
  const double g = fundamental_field(beta, x).norm();
  if (g >= critical_tol) throw Error(ErrorCode::NotCritical, "|beta_X(x)| = " + std::to_string(g));
  return finite_difference_hessian([&](const ProjectivePoint& y) { return gradient_component(group, y, beta); }, x);
}

TangentOperator hessian_f(const CompatibleGroup& group, const ProjectivePoint& x, double critical_tol) {
  const double g = grad_norm_square(group, x).norm();
  if (g >= critical_tol) throw Error(ErrorCode::NotCritical, "|grad f(x)| = " + std::to_string(g));
  return finite_difference_hessian([&](const ProjectivePoint& y) { return norm_square(group, y); }, x);
}

HessianSignature signature(const RVector& eigenvalues, double tol) {
  HessianSignature s;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    if (eigenvalues[i] < -tol)
      ++s.negative;
    else if (eigenvalues[i] > tol)
      ++s.positive;
    else
      ++s.zero;
  }
  return s;
}

RMatrix orbit_directions(const std::vector<CMatrix>& basis, const ProjectivePoint& x,
                         const std::vector<CVector>& frame) {
  RMatrix m(static_cast<Eigen::Index>(frame.size()), static_cast<Eigen::Index>(basis.size()));
  for (std::size_t j = 0; j < basis.size(); ++j) {
    const CVector f = fundamental_field(basis[j], x).vec();
    for (std::size_t i = 0; i < frame.size(); ++i)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = frame[i].dot(f).real();
  }
  return m;
}

KernelReport dmu_kernel_check(const CompatibleGroup& group, const ProjectivePoint& x, double angle_tol) {
  const auto frame = tangent_frame(x);
  const RMatrix d = dmu_matrix(group, x, frame);
  const RMatrix kernel = null_space(d, 1e-9);
  const RMatrix orbit = orth(orbit_directions(group.p_basis(), x, frame), 1e-9);
  const RMatrix complement = null_space(orbit.transpose(), 1e-9);

  KernelReport rep;
  rep.tangent_dim = static_cast<int>(frame.size());
  rep.kernel_dim = static_cast<int>(kernel.cols());
  rep.orbit_dim = static_cast<int>(orbit.cols());
  if (kernel.cols() != complement.cols()) {
    rep.agree = false;
    rep.max_angle = M_PI / 2;
    return rep;
  }
  const RVector angles = principal_angles(kernel, complement);
  rep.max_angle = angles.size() ? angles.maxCoeff() : 0.0;
  rep.agree = rep.max_angle < angle_tol;
  return rep;
}

}  // namespace gradmap
