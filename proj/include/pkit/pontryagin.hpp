#pragma once

// Finite-dimensional Pontryagin spaces: C^n with the indefinite inner
// product [x, y] = y^* J x for a Hermitian invertible Gram matrix J.

#include "pkit/core.hpp"

namespace pkit {

struct Inertia {
  Index plus = 0;
  Index zero = 0;
  Index minus = 0;

  Index dim() const { return plus + zero + minus; }
  friend bool operator==(const Inertia&, const Inertia&) = default;
};

/// Eigenvalue sign counts of a Hermitian matrix. Eigenvalues within
/// tol * max(||M||_2, scale) of zero count as zero.
/// Throws NotHermitian when ||M - M^*|| exceeds tol * ||M|| (Frobenius).
Inertia hermitian_inertia(const CMatrix& m, double tol = 1e-9, double scale = 0.0);

class PontryaginSpace {
 public:
  /// Zero-dimensional space.
  PontryaginSpace() = default;

  /// Validates that `gram` is Hermitian and invertible.
  explicit PontryaginSpace(CMatrix gram, const Tolerances& tol = {});

  static PontryaginSpace hilbert(Index n);

  Index dim() const { return gram_.rows(); }
  const CMatrix& gram() const { return gram_; }
  const CMatrix& gram_inverse() const { return gram_inv_; }
  Index neg_index() const { return inertia_.minus; }
  const Inertia& inertia() const { return inertia_; }
  /// Spectral norm of the Gram matrix; scale for degeneracy decisions.
  double gram_norm() const { return gram_norm_; }

  /// [x, y] = y^* J x.
  cplx inner(const CVector& x, const CVector& y) const;

 private:
  CMatrix gram_ = CMatrix(0, 0);
  CMatrix gram_inv_ = CMatrix(0, 0);
  Inertia inertia_{};
  double gram_norm_ = 0.0;
};

/// K1 [+] K2 with block-diagonal Gram matrix.
PontryaginSpace direct_sum(const PontryaginSpace& a, const PontryaginSpace& b);

/// Basis S and signs d with S^* J S = diag(d), d_i = +-1. Columns of S are
/// J-orthonormal; useful to move to a canonical signature basis.
struct SignatureBasis {
  CMatrix basis;
  RVector signs;
};
SignatureBasis signature_basis(const PontryaginSpace& space);

/// Adjoint of an endomorphism with respect to [.,.]: T^[*] = J^{-1} T^* J.
CMatrix j_adjoint(const CMatrix& t, const PontryaginSpace& space);

/// Adjoint of T : from -> to, i.e. J_from^{-1} T^* J_to.
CMatrix j_adjoint(const CMatrix& t, const PontryaginSpace& from,
                  const PontryaginSpace& to);

/// Gamma^+ = Gamma^* J for Gamma : H -> K, H carrying the Euclidean metric.
CMatrix gamma_plus(const CMatrix& gamma, const PontryaginSpace& space);

/// ||J T - (J T)^*|| <= tol * ||J T||.
bool is_selfadjoint(const CMatrix& t, const PontryaginSpace& space,
                    double tol = 1e-9);

/// Subspace of a Pontryagin space spanned by the columns of a full column
/// rank basis.
class Subspace {
 public:
  Subspace(PontryaginSpace ambient, CMatrix basis, const Tolerances& tol = {});

  /// Zero-dimensional subspace of `ambient`.
  static Subspace zero(PontryaginSpace ambient);

  const PontryaginSpace& ambient() const { return ambient_; }
  const CMatrix& basis() const { return basis_; }
  Index dim() const { return basis_.cols(); }

 private:
  PontryaginSpace ambient_;
  CMatrix basis_;
};

/// B^* J B.
CMatrix subspace_gram(const Subspace& s);

/// True when the restricted inner product is non-degenerate. The decision
/// uses a Euclidean-orthonormal basis and the scale ||J||.
bool is_nondegenerate(const Subspace& s, double tol = 1e-9);

/// Negative inertia of the restricted inner product (degenerate directions
/// count as zero).
Inertia subspace_inertia(const Subspace& s, double tol = 1e-9);

/// J-orthogonal projection E = B (B^* J B)^{-1} B^* J onto S.
/// Throws DegenerateSubspace when B^* J B is singular to tolerance.
CMatrix orthogonal_projection(const Subspace& s, double tol = 1e-9);

/// J-orthogonal companion of a subspace: {x : [x, s] = 0 for all s in S}.
Subspace orthogonal_complement(const Subspace& s, double tol = 1e-9);

/// Restriction of the inner product to a subspace, expressed in a
/// Euclidean-orthonormal basis Q of it: the space (C^d, Q^* J Q).
struct Compression {
  CMatrix basis;          // n x d, orthonormal columns
  PontryaginSpace space;  // Gram Q^* J Q
};
Compression compress(const Subspace& s, const Tolerances& tol = {});

}  // namespace pkit
