#include "gradmap/core.hpp"

#include <algorithm>
#include <cmath>

namespace gradmap {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InputOutsideAlgebra: return "InputOutsideAlgebra";
    case ErrorCode::UnsupportedKind: return "UnsupportedKind";
    case ErrorCode::BasePointMismatch: return "BasePointMismatch";
    case ErrorCode::NotCritical: return "NotCritical";
    case ErrorCode::StepUnderflow: return "StepUnderflow";
    case ErrorCode::LyapunovViolation: return "LyapunovViolation";
    case ErrorCode::DriftExceeded: return "DriftExceeded";
    case ErrorCode::InsufficientTail: return "InsufficientTail";
    case ErrorCode::SingularGroupElement: return "SingularGroupElement";
    case ErrorCode::NoCriticalPointFound: return "NoCriticalPointFound";
    case ErrorCode::ZeroDirection: return "ZeroDirection";
    case ErrorCode::SumMismatch: return "SumMismatch";
    case ErrorCode::ChamberViolation: return "ChamberViolation";
    case ErrorCode::UnknownSuite: return "UnknownSuite";
    case ErrorCode::UnknownScenario: return "UnknownScenario";
    case ErrorCode::ComponentCountMismatch: return "ComponentCountMismatch";
  }
  return "Unknown";
}

RVector realify(const CMatrix& a) {
  RVector out(2 * a.size());
  for (Eigen::Index k = 0; k < a.size(); ++k) {
    out[2 * k] = a.data()[k].real();
    out[2 * k + 1] = a.data()[k].imag();
  }
  return out;
}

CMatrix unrealify(const RVector& v, Eigen::Index rows, Eigen::Index cols) {
  CMatrix out(rows, cols);
  for (Eigen::Index k = 0; k < out.size(); ++k) out.data()[k] = cplx(v[2 * k], v[2 * k + 1]);
  return out;
}

RVector realify(const CVector& v) {
  RVector out(2 * v.size());
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    out[2 * k] = v[k].real();
    out[2 * k + 1] = v[k].imag();
  }
  return out;
}

CVector unrealify(const RVector& v) {
  CVector out(v.size() / 2);
  for (Eigen::Index k = 0; k < out.size(); ++k) out[k] = cplx(v[2 * k], v[2 * k + 1]);
  return out;
}

std::vector<CMatrix> orthonormalize(const std::vector<CMatrix>& input, double tol) {
  std::vector<CMatrix> out;
  for (const auto& m : input) {
    CMatrix r = m;
    // two passes keep the basis orthonormal to machine precision
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : out) r -= inner(r, q) * q;
    const double nr = frob(r);
    if (nr > tol) out.push_back(r / nr);
  }
  return out;
}

namespace {

template <typename F>
CMatrix hermitian_apply(const CMatrix& p, F&& fn) {
  const CMatrix h = 0.5 * (p + p.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  RVector d = es.eigenvalues();
  for (Eigen::Index i = 0; i < d.size(); ++i) d[i] = fn(d[i]);
  return es.eigenvectors() * d.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

CMatrix hermitian_log(const CMatrix& p) {
  return hermitian_apply(p, [](double x) {
    if (x <= 0) throw Error(ErrorCode::InvalidArgument, "hermitian_log of non-positive matrix");
    return std::log(x);
  });
}

CMatrix hermitian_pow(const CMatrix& p, double exponent) {
  return hermitian_apply(p, [exponent](double x) {
    if (x <= 0) throw Error(ErrorCode::InvalidArgument, "hermitian_pow of non-positive matrix");
    return std::pow(x, exponent);
  });
}

CMatrix hermitian_exp(const CMatrix& h) {
  return hermitian_apply(h, [](double x) { return std::exp(x); });
}

RMatrix orth(const RMatrix& a, double rel_tol) {
  if (a.cols() == 0 || a.rows() == 0) return RMatrix(a.rows(), 0);
  Eigen::JacobiSVD<RMatrix> svd(a, Eigen::ComputeThinU);
  const RVector& s = svd.singularValues();
  if (s.size() == 0 || s[0] == 0.0) return RMatrix(a.rows(), 0);
  Eigen::Index rank = 0;
  while (rank < s.size() && s[rank] > rel_tol * s[0]) ++rank;
  return svd.matrixU().leftCols(rank);
}

RMatrix null_space(const RMatrix& a, double abs_tol) {
  const Eigen::Index n = a.cols();
  if (a.rows() == 0) return RMatrix::Identity(n, n);
  Eigen::JacobiSVD<RMatrix> svd(a, Eigen::ComputeFullV);
  const RVector& s = svd.singularValues();
  Eigen::Index rank = 0;
  while (rank < s.size() && s[rank] > abs_tol) ++rank;
  return svd.matrixV().rightCols(n - rank);
}

RVector principal_angles(const RMatrix& a, const RMatrix& b) {
  if (a.cols() == 0 || b.cols() == 0) return RVector(0);
  const RMatrix qa = orth(a);
  const RMatrix qb = orth(b);
  if (qa.cols() == 0 || qb.cols() == 0) return RVector(0);
  const RMatrix cross = qa.transpose() * qb;
  Eigen::JacobiSVD<RMatrix> cos_svd(cross);
  const RVector cosines = cos_svd.singularValues();  // descending
  Eigen::JacobiSVD<RMatrix> sin_svd(qb - qa * cross);
  RVector sines = sin_svd.singularValues();
  std::sort(sines.data(), sines.data() + sines.size());
  RVector angles(cosines.size());
  for (Eigen::Index i = 0; i < cosines.size(); ++i) {
    const double c = std::clamp(cosines[i], 0.0, 1.0);
    // small angles are resolved by their sines
    if (c * c >= 0.5 && i < sines.size())
      angles[i] = std::asin(std::clamp(sines[i], 0.0, 1.0));
    else
      angles[i] = std::acos(c);
  }
  std::sort(angles.data(), angles.data() + angles.size());
  return angles;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

CVector Rng::complex_gaussian(Eigen::Index n) {
  CVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double re = normal();
    const double im = normal();
    v[i] = cplx(re, im);
  }
  return v;
}

RVector Rng::real_gaussian(Eigen::Index n) {
  RVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = normal();
  return v;
}

RMatrix haar_orthogonal(Eigen::Index n, Rng& rng, bool special) {
  RMatrix a(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) a(i, j) = rng.normal();
  Eigen::HouseholderQR<RMatrix> qr(a);
  RMatrix q = qr.householderQ();
  const RMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j)
    if (r(j, j) < 0) q.col(j) *= -1.0;
  if (special && q.determinant() < 0) q.col(0) *= -1.0;
  return q;
}

CMatrix haar_unitary(Eigen::Index n, Rng& rng) {
  CMatrix a(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) {
      const double re = rng.normal();
      const double im = rng.normal();
      a(i, j) = cplx(re, im);
    }
  Eigen::HouseholderQR<CMatrix> qr(a);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

}  // namespace gradmap
