#include "gradmap/lie.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <unsupported/Eigen/MatrixFunctions>

namespace gradmap {

const char* to_string(GroupKind kind) {
  switch (kind) {
    case GroupKind::FullComplex: return "FullComplex";
    case GroupKind::RealGeneralLinear: return "RealGeneralLinear";
    case GroupKind::RealSpecialLinear: return "RealSpecialLinear";
    case GroupKind::PositiveDiagonalTorus: return "PositiveDiagonalTorus";
    case GroupKind::Custom: return "Custom";
  }
  return "Custom";
}

GroupKind group_kind_from_string(const std::string& name) {
  for (GroupKind k : {GroupKind::FullComplex, GroupKind::RealGeneralLinear, GroupKind::RealSpecialLinear,
                      GroupKind::PositiveDiagonalTorus, GroupKind::Custom})
    if (name == to_string(k)) return k;
  throw Error(ErrorCode::InvalidArgument, "unknown group kind '" + name + "'");
}

namespace {

CMatrix unit(int n, int i, int j) {
  CMatrix m = CMatrix::Zero(n, n);
  m(i, j) = 1.0;
  return m;
}

std::vector<CMatrix> so_basis(int n) {
  std::vector<CMatrix> out;
  const double s = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) out.push_back(s * (unit(n, i, j) - unit(n, j, i)));
  return out;
}

std::vector<CMatrix> sym_offdiag_basis(int n) {
  std::vector<CMatrix> out;
  const double s = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) out.push_back(s * (unit(n, i, j) + unit(n, j, i)));
  return out;
}

std::vector<CMatrix> diag_basis(int n) {
  std::vector<CMatrix> out;
  for (int i = 0; i < n; ++i) out.push_back(unit(n, i, i));
  return out;
}

std::vector<CMatrix> traceless_diag_basis(int n) {
  std::vector<CMatrix> raw;
  for (int i = 0; i + 1 < n; ++i) raw.push_back(unit(n, i, i) - unit(n, i + 1, i + 1));
  return orthonormalize(raw);
}

double span_residual(const CMatrix& m, const std::vector<CMatrix>& onb) {
  CMatrix r = m;
  for (const auto& q : onb) r -= inner(r, q) * q;
  return frob(r);
}

bool is_real_diagonal(const CMatrix& m, double tol = 1e-12) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (i != j && std::abs(m(i, j)) > tol) return false;
      if (i == j && std::abs(m(i, j).imag()) > tol) return false;
    }
  return true;
}

}  // namespace

CompatibleGroup::CompatibleGroup(int n, GroupKind kind, std::vector<CMatrix> k, std::vector<CMatrix> p,
                                 std::string label)
    : n_(n), kind_(kind), label_(std::move(label)), k_(std::move(k)), p_(std::move(p)) {
  algebra_ = k_;
  algebra_.insert(algebra_.end(), p_.begin(), p_.end());
}

CompatibleGroup CompatibleGroup::full_complex(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be positive");
  std::vector<CMatrix> p = diag_basis(n);
  const double s = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      p.push_back(s * (unit(n, i, j) + unit(n, j, i)));
      p.push_back(s * kI * (unit(n, i, j) - unit(n, j, i)));
    }
  std::vector<CMatrix> k;
  for (const auto& m : p) k.push_back(kI * m);
  return CompatibleGroup(n, GroupKind::FullComplex, std::move(k), std::move(p), "GL(" + std::to_string(n) + ",C)");
}

CompatibleGroup CompatibleGroup::real_general_linear(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be positive");
  std::vector<CMatrix> p = diag_basis(n);
  for (auto& m : sym_offdiag_basis(n)) p.push_back(m);
  return CompatibleGroup(n, GroupKind::RealGeneralLinear, so_basis(n), std::move(p),
                         "GL(" + std::to_string(n) + ",R)");
}

CompatibleGroup CompatibleGroup::real_special_linear(int n) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "SL(n,R) needs n >= 2");
  std::vector<CMatrix> p = traceless_diag_basis(n);
  for (auto& m : sym_offdiag_basis(n)) p.push_back(m);
  return CompatibleGroup(n, GroupKind::RealSpecialLinear, so_basis(n), std::move(p),
                         "SL(" + std::to_string(n) + ",R)");
}

CompatibleGroup CompatibleGroup::positive_diagonal_torus(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be positive");
  return CompatibleGroup(n, GroupKind::PositiveDiagonalTorus, {}, diag_basis(n),
                         "T(" + std::to_string(n) + ",R+)");
}

CompatibleGroup CompatibleGroup::custom(int n, const std::vector<CMatrix>& basis, std::string label) {
  std::vector<CMatrix> skew, herm;
  for (const auto& m : basis) {
    if (m.rows() != n || m.cols() != n) throw Error(ErrorCode::InvalidArgument, "basis matrix has wrong shape");
    skew.push_back(0.5 * (m - m.adjoint()));
    herm.push_back(0.5 * (m + m.adjoint()));
  }
  auto k = orthonormalize(skew);
  auto p = orthonormalize(herm);
  const auto span = orthonormalize(basis);
  if (k.size() + p.size() != span.size())
    throw Error(ErrorCode::InvalidArgument, "custom basis does not span a theta-stable subspace");
  for (const auto& m : k)
    if (span_residual(m, span) > 1e-9) throw Error(ErrorCode::InvalidArgument, "custom basis is not theta-stable");
  for (const auto& m : p)
    if (span_residual(m, span) > 1e-9) throw Error(ErrorCode::InvalidArgument, "custom basis is not theta-stable");
  for (std::size_t i = 0; i < span.size(); ++i)
    for (std::size_t j = i + 1; j < span.size(); ++j)
      if (span_residual(bracket(span[i], span[j]), span) > 1e-9)
        throw Error(ErrorCode::InvalidArgument, "custom basis is not closed under the bracket");
  return CompatibleGroup(n, GroupKind::Custom, std::move(k), std::move(p), std::move(label));
}

RVector CompatibleGroup::p_coords(const CMatrix& m) const {
  RVector c(p_.size());
  for (std::size_t i = 0; i < p_.size(); ++i) c[i] = inner(m, p_[i]);
  return c;
}

CMatrix CompatibleGroup::from_p_coords(const RVector& c) const {
  CMatrix out = CMatrix::Zero(n_, n_);
  for (std::size_t i = 0; i < p_.size(); ++i) out += c[i] * p_[i];
  return out;
}

RVector CompatibleGroup::algebra_coords(const CMatrix& m) const {
  RVector c(algebra_.size());
  for (std::size_t i = 0; i < algebra_.size(); ++i) c[i] = inner(m, algebra_[i]);
  return c;
}

CMatrix CompatibleGroup::from_algebra_coords(const RVector& c) const {
  CMatrix out = CMatrix::Zero(n_, n_);
  for (std::size_t i = 0; i < algebra_.size(); ++i) out += c[i] * algebra_[i];
  return out;
}

CMatrix CompatibleGroup::exp_k(const RVector& c) const {
  CMatrix xi = CMatrix::Zero(n_, n_);
  for (std::size_t i = 0; i < k_.size(); ++i) xi += c[i] * k_[i];
  return xi.exp();
}

CMatrix CompatibleGroup::sample_k(Rng& rng) const {
  switch (kind_) {
    case GroupKind::FullComplex: return haar_unitary(n_, rng);
    case GroupKind::RealGeneralLinear: return haar_orthogonal(n_, rng, false).cast<cplx>();
    case GroupKind::RealSpecialLinear: return haar_orthogonal(n_, rng, true).cast<cplx>();
    case GroupKind::PositiveDiagonalTorus: return CMatrix::Identity(n_, n_);
    case GroupKind::Custom: break;
  }
  if (k_.empty()) return CMatrix::Identity(n_, n_);
  return exp_k(3.0 * rng.real_gaussian(dim_k()));
}

CMatrix CompatibleGroup::sample_g(Rng& rng, double max_norm) const {
  const CMatrix k = sample_k(rng);
  if (p_.empty()) return k;
  RVector dir = rng.real_gaussian(dim_p());
  dir /= dir.norm();
  const double r = rng.uniform(0.0, max_norm);
  return k * hermitian_exp(from_p_coords(r * dir));
}

CartanParts cartan_project(const CompatibleGroup& group, const CMatrix& xi, double tol) {
  if (xi.rows() != group.n() || xi.cols() != group.n())
    throw Error(ErrorCode::InvalidArgument, "matrix has wrong shape");
  const double res = group.algebra_residual(xi);
  if (res > tol * std::max(1.0, frob(xi)))
    throw Error(ErrorCode::InputOutsideAlgebra, "residual " + std::to_string(res));
  CartanParts parts;
  parts.k_part = 0.5 * (xi - xi.adjoint());
  parts.p_part = 0.5 * (xi + xi.adjoint());
  return parts;
}

std::vector<CMatrix> AdEigenDecomposition::centralizer() const {
  for (std::size_t i = 0; i < eigenvalues.size(); ++i)
    if (eigenvalues[i] == 0.0) return eigenspaces[i];
  return {};
}

std::vector<CMatrix> AdEigenDecomposition::positive_part() const {
  std::vector<CMatrix> out;
  for (std::size_t i = 0; i < eigenvalues.size(); ++i)
    if (eigenvalues[i] > 0.0) out.insert(out.end(), eigenspaces[i].begin(), eigenspaces[i].end());
  return out;
}

std::vector<CMatrix> AdEigenDecomposition::parabolic() const {
  std::vector<CMatrix> out = centralizer();
  auto pos = positive_part();
  out.insert(out.end(), pos.begin(), pos.end());
  return out;
}

AdEigenDecomposition ad_eigendecomposition(const CompatibleGroup& group, const CMatrix& beta, double cluster_tol) {
  const CMatrix proj = group.project_p(beta);
  if (frob(beta - proj) > 1e-9 * std::max(1.0, frob(beta)))
    throw Error(ErrorCode::InvalidArgument, "beta is not in p");
  const auto& basis = group.lie_algebra_basis();
  const int d = group.dim();
  RMatrix ad(d, d);
  for (int j = 0; j < d; ++j) {
    const CMatrix img = bracket(proj, basis[j]);
    for (int i = 0; i < d; ++i) ad(i, j) = inner(basis[i], img);
  }
  const RMatrix sym = 0.5 * (ad + ad.transpose());
  Eigen::SelfAdjointEigenSolver<RMatrix> es(sym);

  AdEigenDecomposition out;
  out.beta = proj;
  const RVector& ev = es.eigenvalues();
  int start = 0;
  while (start < d) {
    int stop = start + 1;
    while (stop < d && ev[stop] - ev[stop - 1] <= cluster_tol) ++stop;
    double mean = ev.segment(start, stop - start).mean();
    if (std::abs(mean) <= cluster_tol) mean = 0.0;
    std::vector<CMatrix> space;
    for (int c = start; c < stop; ++c) space.push_back(group.from_algebra_coords(es.eigenvectors().col(c)));
    out.eigenvalues.push_back(mean);
    out.eigenspaces.push_back(std::move(space));
    start = stop;
  }
  return out;
}

AbelianSubalgebra::AbelianSubalgebra(CompatibleGroup parent, std::vector<CMatrix> basis, WeylType weyl, bool diagonal)
    : parent_(std::move(parent)), basis_(std::move(basis)), weyl_(weyl), diagonal_(diagonal) {}

AbelianSubalgebra AbelianSubalgebra::diagonal(const CompatibleGroup& group) {
  const int n = group.n();
  switch (group.kind()) {
    case GroupKind::FullComplex:
    case GroupKind::RealGeneralLinear:
      return AbelianSubalgebra(group, diag_basis(n), WeylType::Permutation, true);
    case GroupKind::RealSpecialLinear:
      return AbelianSubalgebra(group, traceless_diag_basis(n), WeylType::Permutation, true);
    case GroupKind::PositiveDiagonalTorus:
      return AbelianSubalgebra(group, diag_basis(n), WeylType::Trivial, true);
    case GroupKind::Custom: break;
  }
  throw Error(ErrorCode::UnsupportedKind, "no canonical diagonal subalgebra for custom groups");
}

AbelianSubalgebra AbelianSubalgebra::custom(const CompatibleGroup& group, const std::vector<CMatrix>& basis) {
  auto onb = orthonormalize(basis);
  for (const auto& m : onb)
    if (span_residual(m, group.p_basis()) > 1e-9) throw Error(ErrorCode::InvalidArgument, "a is not inside p");
  for (std::size_t i = 0; i < onb.size(); ++i)
    for (std::size_t j = i + 1; j < onb.size(); ++j)
      if (frob(bracket(onb[i], onb[j])) > 1e-10) throw Error(ErrorCode::InvalidArgument, "a is not Abelian");
  const bool diag = std::all_of(onb.begin(), onb.end(), [](const CMatrix& m) { return is_real_diagonal(m); });
  return AbelianSubalgebra(group, std::move(onb), WeylType::Unsupported, diag);
}

RVector AbelianSubalgebra::coords(const CMatrix& m) const {
  RVector c(basis_.size());
  for (std::size_t i = 0; i < basis_.size(); ++i) c[i] = inner(m, basis_[i]);
  return c;
}

CMatrix AbelianSubalgebra::from_coords(const RVector& c) const {
  const int n = parent_.n();
  CMatrix out = CMatrix::Zero(n, n);
  for (std::size_t i = 0; i < basis_.size(); ++i) out += c[i] * basis_[i];
  return out;
}

RVector AbelianSubalgebra::diag_coords(const CMatrix& m) const {
  if (!diagonal_) throw Error(ErrorCode::UnsupportedKind, "a is not diagonal");
  return project(m).diagonal().real();
}

CMatrix AbelianSubalgebra::from_diag(const RVector& d) const {
  if (!diagonal_) throw Error(ErrorCode::UnsupportedKind, "a is not diagonal");
  return project(d.cast<cplx>().asDiagonal().toDenseMatrix());
}

std::vector<RestrictedRoot> restricted_roots(const AbelianSubalgebra& a) {
  if (a.weyl() == WeylType::Unsupported)
    throw Error(ErrorCode::UnsupportedKind, "maximality of a is not certified for this group");
  const auto& group = a.parent();
  // generic element: distinct roots take distinct values on it
  RVector c(a.dim());
  for (int i = 0; i < a.dim(); ++i) c[i] = 1.0 / (i + M_PI);
  const auto dec = ad_eigendecomposition(group, a.from_coords(c));

  std::vector<RestrictedRoot> roots;
  for (std::size_t s = 0; s < dec.eigenvalues.size(); ++s) {
    if (dec.eigenvalues[s] == 0.0) continue;
    for (const auto& v : dec.eigenspaces[s]) {
      RVector values(a.dim());
      for (int k = 0; k < a.dim(); ++k) values[k] = inner(bracket(a.basis()[k], v), v);
      const RVector functional = a.from_coords(values).diagonal().real();
      auto it = std::find_if(roots.begin(), roots.end(), [&](const RestrictedRoot& r) {
        return (r.functional - functional).norm() < 1e-8;
      });
      if (it == roots.end())
        roots.push_back({functional, 1});
      else
        ++it->multiplicity;
    }
  }
  std::sort(roots.begin(), roots.end(), [](const RestrictedRoot& x, const RestrictedRoot& y) {
    return std::lexicographical_compare(y.functional.data(), y.functional.data() + y.functional.size(),
                                        x.functional.data(), x.functional.data() + x.functional.size());
  });
  return roots;
}

std::vector<RVector> weyl_orbit(const AbelianSubalgebra& a, const RVector& lambda, double tol) {
  switch (a.weyl()) {
    case WeylType::Trivial: return {lambda};
    case WeylType::Unsupported: throw Error(ErrorCode::UnsupportedKind, "Weyl group only available for A-type a");
    case WeylType::Permutation: break;
  }
  std::vector<double> v(lambda.data(), lambda.data() + lambda.size());
  std::sort(v.begin(), v.end());
  std::vector<RVector> out;
  do {
    RVector w = Eigen::Map<RVector>(v.data(), static_cast<Eigen::Index>(v.size()));
    const bool dup = std::any_of(out.begin(), out.end(), [&](const RVector& u) { return (u - w).norm() <= tol; });
    if (!dup) out.push_back(w);
  } while (std::next_permutation(v.begin(), v.end()));
  std::reverse(out.begin(), out.end());
  return out;
}

RVector chamber_representative(const AbelianSubalgebra& a, const RVector& beta) {
  switch (a.weyl()) {
    case WeylType::Trivial: return beta;
    case WeylType::Unsupported: throw Error(ErrorCode::UnsupportedKind, "Weyl group only available for A-type a");
    case WeylType::Permutation: break;
  }
  RVector out = beta;
  std::sort(out.data(), out.data() + out.size(), std::greater<>());
  return out;
}

RVector sorted_spectrum(const CMatrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (hermitian + hermitian.adjoint()), Eigen::EigenvaluesOnly);
  RVector ev = es.eigenvalues().reverse();
  return ev;
}

RVector chamber_label(const AbelianSubalgebra& a, const CMatrix& beta) {
  if (a.weyl() == WeylType::Trivial) return beta.diagonal().real();
  return sorted_spectrum(beta);
}

}  // namespace gradmap
