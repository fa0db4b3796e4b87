#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace gradmap {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

inline const cplx kI{0.0, 1.0};

enum class ErrorCode {
  InvalidArgument,
  InputOutsideAlgebra,
  UnsupportedKind,
  BasePointMismatch,
  NotCritical,
  StepUnderflow,
  LyapunovViolation,
  DriftExceeded,
  InsufficientTail,
  SingularGroupElement,
  NoCriticalPointFound,
  ZeroDirection,
  SumMismatch,
  ChamberViolation,
  UnknownSuite,
  UnknownScenario,
  ComponentCountMismatch,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Ambient inner product <A, B> = Re tr(A B^*). Ad(U(n))-invariant.
inline double inner(const CMatrix& a, const CMatrix& b) {
  return (a.array() * b.array().conjugate()).real().sum();
}

inline double frob(const CMatrix& a) { return a.norm(); }

inline CMatrix bracket(const CMatrix& a, const CMatrix& b) { return a * b - b * a; }

/// Cartan involution of gl(n, C) fixing u(n): theta(xi) = -xi^*.
inline CMatrix theta(const CMatrix& a) { return -a.adjoint(); }

/// Flattens a complex matrix to a real vector (re, im interleaved, column-major).
RVector realify(const CMatrix& a);
CMatrix unrealify(const RVector& v, Eigen::Index rows, Eigen::Index cols);

RVector realify(const CVector& v);
CVector unrealify(const RVector& v);

/// Real Gram-Schmidt on complex matrices under `inner`. Vectors whose residual
/// norm falls below `tol` are dropped.
std::vector<CMatrix> orthonormalize(const std::vector<CMatrix>& input, double tol = 1e-10);

/// Hermitian matrix functions through the eigen-decomposition.
CMatrix hermitian_log(const CMatrix& p);
CMatrix hermitian_pow(const CMatrix& p, double exponent);
CMatrix hermitian_exp(const CMatrix& h);

/// Principal angles (radians, ascending) between two subspaces of R^m given by
/// column spans. Empty subspaces yield an empty vector.
RVector principal_angles(const RMatrix& a, const RMatrix& b);

/// Orthonormal basis of the column span, rank decided relative to the largest
/// singular value.
RMatrix orth(const RMatrix& a, double rel_tol = 1e-9);
/// Orthonormal basis of the null space.
RMatrix null_space(const RMatrix& a, double abs_tol);

// ---------------------------------------------------------------------------
// Seeded randomness

/// splitmix64 mixing of (base, index); used to derive per-job seeds.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double normal() { return normal_(engine_); }
  double uniform(double lo = 0.0, double hi = 1.0) {
    return lo + (hi - lo) * uniform_(engine_);
  }
  CVector complex_gaussian(Eigen::Index n);
  RVector real_gaussian(Eigen::Index n);
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

/// Haar-distributed orthogonal matrix (QR of a Gaussian with sign correction).
/// With `special`, the determinant is forced to +1.
RMatrix haar_orthogonal(Eigen::Index n, Rng& rng, bool special);
/// Haar-distributed unitary matrix (QR with phase correction).
CMatrix haar_unitary(Eigen::Index n, Rng& rng);

}  // namespace gradmap
