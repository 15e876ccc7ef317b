#pragma once

// Inversion of Q(z) = Gamma0^+ (A - z)^{-1} Gamma0 when Gamma0^+ Gamma0 is
// invertible: the projection P onto range(Gamma0), the compressed operator
// A~ = (I - P) A (I - P), the explicit formula for -Q(z)^{-1}, and the
// relation-valued realization of the inverse.

#include "pkit/nevanlinna.hpp"

namespace pkit {

class InversionContext {
 public:
  const Realization& base() const { return base_; }
  /// P = Gamma0 (Gamma0^+ Gamma0)^{-1} Gamma0^+.
  const CMatrix& projection() const { return p_; }
  /// (I - P) A (I - P) on the full space.
  const CMatrix& compressed_operator() const { return atilde_; }
  /// (Gamma0^+ Gamma0)^{-1}.
  const CMatrix& gram_product_inverse() const { return gram_inv_; }
  const CMatrix& gram_product() const { return gram_; }

  /// Euclidean-orthonormal basis of range(I - P) = ker Gamma0^+.
  const CMatrix& complement_basis() const { return comp_; }
  /// Euclidean-orthonormal basis of range(P) = range(Gamma0).
  const CMatrix& range_basis() const { return range_; }
  /// A~ in the coordinates of complement_basis().
  const CMatrix& compressed_coordinates() const { return atilde_c_; }
  /// C^* (I - P) for C = complement_basis(), formed as (C^* J C)^{-1} C^* J.
  const CMatrix& complement_coordinates() const { return cleft_; }
  /// C^* J C and C^* J A C, both Hermitian.
  const CMatrix& compressed_gram() const { return pencil_m_; }
  const CMatrix& compressed_form() const { return pencil_a_; }

  /// (I - P)(A~ - z)^{-1}(I - P) on the full space, computed on range(I - P)
  /// and extended by zero on range(P).
  CMatrix compressed_resolvent(cplx z, const Tolerances& tol = {}) const;

 private:
  friend InversionContext build_context(const Realization& r, const Tolerances& tol);
  explicit InversionContext(Realization base) : base_(std::move(base)) {}

  Realization base_;
  CMatrix p_, atilde_, gram_, gram_inv_, comp_, range_, atilde_c_, cleft_;
  CMatrix cj_, pencil_a_, pencil_m_;
};

/// Throws GramProductSingular (message carries the smallest singular value)
/// when Gamma0^+ Gamma0 is not invertible.
InversionContext build_context(const Realization& r, const Tolerances& tol = {});

/// Qhat(z) = -Q(z)^{-1} from the explicit representation
/// G^{-1} Gamma0^+ {A (I-P)(A~ - z)^{-1}(I-P) A - (A - z)} Gamma0 G^{-1}.
CMatrix qhat_evaluate(const InversionContext& ctx, cplx z, const Tolerances& tol = {});

/// Q(z) = Gamma0^+ {P(A - z)P - P A (I-P)(A~ - z)^{-1}(I-P) A P}^{-1} Gamma0,
/// the inverse taken on range(P).
CMatrix schur_evaluate(const InversionContext& ctx, cplx z, const Tolerances& tol = {});

/// Qhat(z) Gamma0^+ = G^{-1} Gamma0^+ {-I + A (I-P)(A~ - z)^{-1}(I-P)} (A - z).
CMatrix qhat_gamma_plus(const InversionContext& ctx, cplx z, const Tolerances& tol = {});

/// Inverse function -Q^{-1} in general form at reference point z0. The
/// representing relation is reconstructed from its resolvent at z0,
///   (Ahat - z0)^{-1} = (A - z0)^{-1} - Gamma Q(z0)^{-1} Gamma_{conj z0}^+,
/// with Gammahat = -Gamma Q(z0)^{-1} and constant -Q(conj z0)^{-1}.
Realization inverse_realization(const Realization& r, cplx z0, const Tolerances& tol = {});

/// Gamma_z = (I + (z - z0)(A - z)^{-1}) Gamma of a general-form realization.
CMatrix gamma_at(const Realization& r, cplx z, const Tolerances& tol = {});

struct MultivaluedPartReport {
  cplx z0;
  Index multivalued_dim = 0;
  Index range_dim = 0;
  /// Projector distance between Ahat(0) and range(Gamma0).
  double distance = 0.0;
  /// Projector distance between ker (Ahat - z0)^{-1} and range(Gamma0).
  double kernel_distance = 0.0;
  bool selfadjoint = false;
  bool equal = false;
};

/// Builds the inverse realization at z0 (default: first of i, 2i, 0.5 + 1.5i, ...
/// where Q is invertible) and compares its multivalued part with range(Gamma0).
MultivaluedPartReport verify_multivalued_part(const Realization& r,
                                              std::optional<cplx> z0 = std::nullopt,
                                              const Tolerances& tol = {});

/// First point of a fixed upper-half-plane list at which Q is defined and
/// invertible.
cplx pick_reference_point(const Realization& r, const Tolerances& tol = {});

}  // namespace pkit
