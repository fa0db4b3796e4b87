#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gradmap/core.hpp"

namespace gradmap {

enum class GroupKind { FullComplex, RealGeneralLinear, RealSpecialLinear, PositiveDiagonalTorus, Custom };

const char* to_string(GroupKind kind);
GroupKind group_kind_from_string(const std::string& name);

/// A compatible subgroup G = K exp(p) of GL(n, C), described by its Lie
/// algebra. `k_basis` and `p_basis` are orthonormal under `inner`, and
/// together form an orthonormal basis of g (k and p are orthogonal).
class CompatibleGroup {
 public:
  static CompatibleGroup full_complex(int n);
  static CompatibleGroup real_general_linear(int n);
  static CompatibleGroup real_special_linear(int n);
  static CompatibleGroup positive_diagonal_torus(int n);
  /// Any real basis of a theta-stable subalgebra of gl(n, C). Throws
  /// InvalidArgument if the span is not theta-stable or not closed under the
  /// bracket.
  static CompatibleGroup custom(int n, const std::vector<CMatrix>& basis, std::string label = "custom");

  int n() const { return n_; }
  GroupKind kind() const { return kind_; }
  const std::string& label() const { return label_; }
  const std::vector<CMatrix>& lie_algebra_basis() const { return algebra_; }
  const std::vector<CMatrix>& k_basis() const { return k_; }
  const std::vector<CMatrix>& p_basis() const { return p_; }
  int dim() const { return static_cast<int>(algebra_.size()); }
  int dim_k() const { return static_cast<int>(k_.size()); }
  int dim_p() const { return static_cast<int>(p_.size()); }

  /// Coordinates of a matrix's orthogonal projection onto p (resp. g).
  RVector p_coords(const CMatrix& m) const;
  CMatrix from_p_coords(const RVector& c) const;
  CMatrix project_p(const CMatrix& m) const { return from_p_coords(p_coords(m)); }
  RVector algebra_coords(const CMatrix& m) const;
  CMatrix from_algebra_coords(const RVector& c) const;
  CMatrix project_algebra(const CMatrix& m) const { return from_algebra_coords(algebra_coords(m)); }
  /// Residual norm of m after projection onto g.
  double algebra_residual(const CMatrix& m) const { return frob(m - project_algebra(m)); }

  /// Group element k = exp(xi), xi in k, with coordinates c in k_basis.
  CMatrix exp_k(const RVector& c) const;
  /// Random element of K. Haar for the classical kinds; exp of a broad
  /// Gaussian algebra element for Custom groups.
  CMatrix sample_k(Rng& rng) const;
  /// Random g = k exp(xi) with xi in p, ||xi|| <= max_norm.
  CMatrix sample_g(Rng& rng, double max_norm) const;

 private:
  CompatibleGroup(int n, GroupKind kind, std::vector<CMatrix> k, std::vector<CMatrix> p, std::string label);

  int n_;
  GroupKind kind_;
  std::string label_;
  std::vector<CMatrix> k_;
  std::vector<CMatrix> p_;
  std::vector<CMatrix> algebra_;
};

struct CartanParts {
  CMatrix k_part;
  CMatrix p_part;
};

/// Splits xi in g into its k and p components. Throws InputOutsideAlgebra if
/// xi is not in g to within `tol`.
CartanParts cartan_project(const CompatibleGroup& group, const CMatrix& xi, double tol = 1e-9);

/// Eigen-decomposition of ad(beta) on g for beta in p. ad(beta) is symmetric
/// for the ambient inner product, so the decomposition is orthogonal.
struct AdEigenDecomposition {
  CMatrix beta;
  std::vector<double> eigenvalues;                  // ascending, distinct
  std::vector<std::vector<CMatrix>> eigenspaces;    // orthonormal bases

  std::vector<CMatrix> centralizer() const;          // g^beta   (lambda = 0)
  std::vector<CMatrix> positive_part() const;        // r^{beta+} (lambda > 0)
  std::vector<CMatrix> parabolic() const;            // g^{beta+} (lambda >= 0)
};

AdEigenDecomposition ad_eigendecomposition(const CompatibleGroup& group, const CMatrix& beta,
                                           double cluster_tol = 1e-9);

enum class WeylType { Permutation, Trivial, Unsupported };

/// Abelian subalgebra a of p with a chosen positive chamber. For the diagonal
/// a of the classical kinds, elements are addressed by their diagonal
/// ("diag coordinates", length n); `coords` uses the orthonormal a_basis.
class AbelianSubalgebra {
 public:
  /// Real diagonal matrices in p.
  static AbelianSubalgebra diagonal(const CompatibleGroup& group);
  /// User-supplied commuting basis inside p. Weyl machinery is unavailable.
  static AbelianSubalgebra custom(const CompatibleGroup& group, const std::vector<CMatrix>& basis);

  const CompatibleGroup& parent() const { return parent_; }
  const std::vector<CMatrix>& basis() const { return basis_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  WeylType weyl() const { return weyl_; }
  bool is_diagonal() const { return diagonal_; }

  RVector coords(const CMatrix& m) const;
  CMatrix from_coords(const RVector& c) const;
  /// Orthogonal projection onto a, as a matrix.
  CMatrix project(const CMatrix& m) const { return from_coords(coords(m)); }

  /// Diagonal entries of the projection (diagonal a only).
  RVector diag_coords(const CMatrix& m) const;
  CMatrix from_diag(const RVector& d) const;

 private:
  AbelianSubalgebra(CompatibleGroup parent, std::vector<CMatrix> basis, WeylType weyl, bool diagonal);

  CompatibleGroup parent_;
  std::vector<CMatrix> basis_;
  WeylType weyl_;
  bool diagonal_;
};

struct RestrictedRoot {
  RVector functional;  // diag-coordinate vector (e_i - e_j for A-type)
  int multiplicity;
};

std::vector<RestrictedRoot> restricted_roots(const AbelianSubalgebra& a);

/// W-orbit of lambda (diag coordinates), duplicates removed, sorted
/// lexicographically descending.
std::vector<RVector> weyl_orbit(const AbelianSubalgebra& a, const RVector& lambda, double tol = 1e-12);

/// The unique point of W.beta in the closed positive chamber.
RVector chamber_representative(const AbelianSubalgebra& a, const RVector& beta);

/// K-invariant label of beta in p: its chamber representative. For the trivial
/// Weyl group that is beta's diagonal; otherwise the descending spectrum of the
/// Hermitian matrix beta.
RVector chamber_label(const AbelianSubalgebra& a, const CMatrix& beta);

/// Descending eigenvalues of a Hermitian matrix.
RVector sorted_spectrum(const CMatrix& hermitian);

}  // namespace gradmap
