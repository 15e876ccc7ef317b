#pragma once

// Splitting a realized function into a sum of functions whose negative
// indices add up: invariant-subspace splits, sums and block-diagonal
// compositions, local splits at an eigenvalue, and the split of the inverse.

#include <string>
#include <vector>

#include "pkit/inversion.hpp"

namespace pkit {

struct Component {
  std::string name;
  GNFunction function;
  std::optional<Realization> realization;
  KappaEstimate kappa;
  /// Euclidean-orthonormal embedding of the component's state space into the
  /// ambient space; empty when the component has no state-space part there.
  CMatrix embedding;
};

struct DecompositionReport {
  std::vector<Component> components;
  Index kappa_sum = 0;
  KappaEstimate kappa_whole;
  /// kappa_sum == kappa_whole.value.
  bool desirable = false;
  /// max ||Q - sum Q_i|| / max(1, ||Q||) over the verification grid.
  double residual = 0.0;
  /// Diagnostics that do not invalidate the report.
  std::vector<std::string> notes;
};

/// Ten fixed points in the open upper half plane.
const std::vector<cplx>& verification_grid();

/// max over `points` of ||f(z) - sum_i g_i(z)|| / max(1, ||f(z)||); points where
/// any term is undefined are skipped.
double sum_residual(const GNFunction& whole, const std::vector<GNFunction>& parts,
                    const std::vector<cplx>& points, const Tolerances& tol = {});

/// Restriction of a realization to the range of a J-symmetric projection E
/// commuting with A. `basis` is a Euclidean-orthonormal basis of range(E).
/// Bounded form: (B^* J B, B^* A B, B^* E Gamma0). General form: the relation
/// {(B^* E x, B^* E y)} with Gamma_i = B^* E Gamma and the given constant.
Realization restrict_realization(const Realization& r, const CMatrix& basis, const CMatrix& e,
                                 const CMatrix& ref_value_adj = {},
                                 const Tolerances& tol = {});

/// Two-term split along a non-degenerate A-invariant subspace S and its
/// J-orthogonal complement. Requires a minimal realization.
DecompositionReport split_by_invariant_subspace(const Realization& r, const Subspace& s,
                                                const Tolerances& tol = {});

/// Realization of Q1 + Q2 on the orthogonal sum of the two state spaces.
/// Bounded + bounded stays bounded; otherwise both are taken to general form
/// at a common reference point.
Realization sum_realizations(const Realization& r1, const Realization& r2,
                             const Tolerances& tol = {});

/// Q1 (+) Q2 realized with Gamma = Gamma1 (+) Gamma2.
Realization block_diag_realization(const Realization& r1, const Realization& r2,
                                   const Tolerances& tol = {});

GNFunction block_diag(const GNFunction& f1, const GNFunction& f2);

struct SumMinimalityReport {
  bool first_minimal = false;
  bool second_minimal = false;
  /// Gamma^+ = Gamma1^+ + Gamma2^+ injective on the sum space.
  bool gamma_plus_injective = false;
  bool sum_minimal = false;
  bool first_gamma_injective = false;
  bool second_gamma_injective = false;
  /// Separating property of Q1 + Q2 (bounded forms only).
  std::optional<bool> separating;
  /// gamma_plus_injective implies sum_minimal.
  bool injective_implies_minimal = true;
  /// sum_minimal and an injective Gamma0_i imply separating.
  bool minimal_implies_separating = true;
};

SumMinimalityReport sum_minimality_check(const Realization& r1, const Realization& r2,
                                         const Tolerances& tol = {});

/// Whether a sum Q1 + Q2 of minimal components is a split of the sum's own
/// minimal realization.
struct ConverseProbe {
  bool components_minimal = false;
  /// ||Q - Q1 - Q2|| over the verification grid; matches when <= 1e-8.
  double sum_residual = 0.0;
  bool sum_matches = false;
  Index kappa1 = 0, kappa2 = 0, kappa_sum_function = 0;
  bool kappa_additive = false;
  /// Gamma^+ = Gamma1^+ + Gamma2^+ injective on the sum space.
  bool gamma_plus_injective = false;
  bool sum_minimal = false;
  /// Components minimal, sum matches, indices add, yet the sum is not minimal.
  bool converse_fails = false;
  /// When gamma_plus_injective: the sum is minimal and kappa is additive.
  bool additivity_holds = true;
};

ConverseProbe split_converse_probe(const Realization& r1, const Realization& r2,
                                   const Tolerances& tol = {});

/// Q = Q_alpha + H_alpha with Q_alpha realized on the root subspace of A at
/// alpha (via the spectral projector) and H_alpha on the remaining root
/// subspaces. Bounded form only.
DecompositionReport local_split(const Realization& r, double alpha, const Tolerances& tol = {});

struct LocalSplitChecks {
  /// H_alpha is defined at z = alpha.
  bool remainder_regular_at_alpha = false;
  /// Projector distance between the root subspace of Q_alpha's operator
  /// (mapped back) and the root subspace of A at alpha.
  double root_distance = 0.0;
  /// Q_alpha's Gamma0^+ Gamma0 is singular.
  bool component_gram_singular = false;
};

LocalSplitChecks local_split_checks(const Realization& r, double alpha,
                                    const DecompositionReport& rep,
                                    const Tolerances& tol = {});

/// -Q^{-1} = Qhat1 + Qhat2 with Qhat1 affine in z and Qhat2 realized by
/// (I-P)A(I-P) on range(I-P).
DecompositionReport invert_with_split(const Realization& r, const Tolerances& tol = {});

/// Realization of Qhat2 on range(I - P), in a basis of that subspace whose
/// Gram matrix is diag(+-1).
Realization inverse_remainder_realization(const InversionContext& ctx,
                                          const Tolerances& tol = {});

/// Qhat1(z) = -G^{-1} Gamma0^+ A Gamma0 G^{-1} + z G^{-1}.
GNFunction inverse_affine_part(const InversionContext& ctx);

}  // namespace pkit
