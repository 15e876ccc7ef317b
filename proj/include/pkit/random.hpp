#pragma once

// Seeded random instances: indefinite metrics, J-self-adjoint operators,
// realizations with planted invariant subspaces or Jordan structure.

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "pkit/jordan.hpp"

namespace pkit::random {

using Rng = std::mt19937_64;

/// Entries with independent standard normal real and imaginary parts.
CMatrix gaussian(Rng& rng, Index rows, Index cols);

/// U diag(s) V^* with s uniform in [0.5, 2] and Haar-like unitary U, V.
CMatrix well_conditioned(Rng& rng, Index n);

/// J = S^* diag(+1 x (n - kappa), -1 x kappa) S.
PontryaginSpace random_space(Rng& rng, Index n, Index kappa);

/// J^{-1} H with H a random Hermitian matrix.
CMatrix random_selfadjoint(Rng& rng, const PontryaginSpace& space);

/// Bounded-form realization with random metric, operator and Gamma0 (n x m).
Realization random_realization(Rng& rng, Index n, Index kappa, Index m);

/// Sizes drawn uniformly: n in [min_dim, max_dim], kappa in [0, n], m in [1, n].
Realization random_instance(Rng& rng, Index min_dim, Index max_dim);

struct InvariantInstance {
  Realization realization;
  Subspace subspace;
  Index kappa1 = 0;
  Index kappa2 = 0;
};

/// A = S^{-1} (A1 (+) A2) S and J = S^* (J1 (+) J2) S for random blocks, so
/// that S^{-1}[I; 0] is a non-degenerate invariant subspace.
InvariantInstance invariant_instance(Rng& rng, Index n, Index m);

struct JordanBlockSpec {
  Index length = 1;
  int sign = 1;
};

struct PlantedJordan {
  Realization realization;
  double alpha = 0.0;
  std::vector<JordanBlockSpec> blocks;
  /// Negative index implied by the planted canonical form.
  Index kappa = 0;
  /// Chain of the first planted block; its top is the first column of Gamma0.
  JordanChain gamma_chain;
};

/// Canonical J-self-adjoint form with random Jordan blocks at a real alpha,
/// extra simple real eigenvalues and possibly a non-real pair, then a random
/// congruence. dim <= max_dim.
PlantedJordan planted_jordan(Rng& rng, Index max_dim);

}  // namespace pkit::random
