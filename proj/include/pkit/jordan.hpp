#pragma once

// Root subspaces and Jordan chains of a J-self-adjoint operator at a real
// eigenvalue, the chain-wise splitting of the state space, and the
// pole-cancellation function of a chain.

#include <optional>
#include <vector>

#include "pkit/decomposition.hpp"

namespace pkit {

struct JordanChain {
  double alpha = 0.0;
  /// Column k is x_k: (A - alpha) x_0 = 0, (A - alpha) x_k = x_{k-1}.
  CMatrix vectors;

  Index length() const { return vectors.cols(); }
};

/// Largest chain residual relative to ||A|| max_k ||x_k||.
double chain_residual(const CMatrix& a, const JordanChain& chain);

/// Generalized eigenspace of A at alpha; zero-dimensional when alpha is not
/// an eigenvalue. Bounded form only.
Subspace root_manifold(const Realization& r, double alpha, const Tolerances& tol = {});

/// Non-degenerate chains exhausting the root subspace at alpha: longest first,
/// the top vector chosen to maximize |[(A - alpha)^{l-1} x, x]| over unit x,
/// each chain split off J-orthogonally before the next is chosen.
/// Throws NotEigenvalue.
std::vector<JordanChain> canonical_chains(const Realization& r, double alpha,
                                          const Tolerances& tol = {});

/// A chain of maximal length at alpha whose span is non-degenerate.
std::optional<JordanChain> maximal_nondegenerate_chain(const Realization& r, double alpha,
                                                       const Tolerances& tol = {});

/// h with (A - alpha)^{l-1} E Gamma0 h = x_0, where E is the J-orthogonal
/// projection onto the chain's span. The chain regenerated from E Gamma0 h
/// spans the same subspace. Throws NoGenerator when x_0 is out of reach.
CVector chain_generator_in_range(const Realization& r, const JordanChain& chain,
                                 const Tolerances& tol = {});

/// Chain x_k = (A - alpha)^{l-1-k} E Gamma0 h.
JordanChain regenerate_chain(const Realization& r, const JordanChain& chain, const CVector& h);

enum class BlockKind {
  /// Positive eigenvectors at alpha; a Hilbert space.
  Positive,
  /// Span of one non-degenerate chain.
  Chain,
  /// J-orthogonal remainder with no non-degenerate chains at alpha.
  Remainder,
};

struct AlphaBlock {
  BlockKind kind = BlockKind::Remainder;
  /// Euclidean-orthonormal basis of K_i (n x d_i).
  CMatrix basis;
  /// J-orthogonal projection E_i onto K_i.
  CMatrix projection;
  Index kappa = 0;
  std::optional<JordanChain> chain;
  std::optional<CVector> generator;
  /// Projector distance between K_i and the span of the regenerated chain.
  double generator_distance = 0.0;
  /// Q_i realized on K_i.
  std::optional<Realization> component;
};

struct AlphaDecomposition {
  double alpha = 0.0;
  std::vector<AlphaBlock> blocks;  // K_0, K_1..K_r, K_{r+1}
  Index chain_count = 0;           // r
  Index kappa_whole = 0;
  Index kappa_sum = 0;
  /// max_{i != j} ||B_i^* J B_j|| / ||J||.
  double orthogonality_defect = 0.0;
  /// ||Q - sum Q_i|| over the verification grid, relative to max(1, ||Q||).
  double residual = 0.0;
};

/// Requires a minimal bounded-form realization and an eigenvalue alpha.
AlphaDecomposition alpha_decomposition(const Realization& r, double alpha,
                                       const Tolerances& tol = {});

/// eta(z) = Q(z)^{-1} Gamma0^+ (x_0 + (z - alpha) x_1 + ... + (z - alpha)^{l-1} x_{l-1}).
class PoleCancellation {
 public:
  PoleCancellation(Realization r, JordanChain chain, const Tolerances& tol = {});

  /// Throws SingularValue where Q(z) is not invertible.
  CVector operator()(cplx z, const Tolerances& tol = {}) const;

  const JordanChain& chain() const { return chain_; }
  /// h with Gamma0 h = x_{l-1}, when the chain top lies in range(Gamma0).
  const std::optional<CVector>& top_generator() const { return h_; }
  /// -(z - alpha)^l h; requires top_generator().
  CVector predicted(cplx z) const;

 private:
  Realization r_;
  JordanChain chain_;
  std::optional<CVector> h_;
};

PoleCancellation pole_cancellation(const Realization& r, const JordanChain& chain,
                                   const Tolerances& tol = {});

struct DecayFit {
  /// Least-squares slope of log ||eta(alpha + t)|| against log t.
  double slope = 0.0;
  std::vector<double> distances;
  std::vector<double> norms;
};

/// Fit over t = 10^{-k}, k = k_min..k_max. A - z has condition number of
/// order t^{-p} for p the longest chain at alpha, so the default window stops
/// at t = 1e-3 to keep every sample well inside the resolvent set.
DecayFit decay_rate(const PoleCancellation& eta, int k_min = 1, int k_max = 3,
                    const Tolerances& tol = {});

}  // namespace pkit
