#pragma once

// Randomized verification: every identity the library implements, checked on
// seeded random instances. Used by `pkit fuzz` and the acceptance suite.

#include <cstdint>
#include <string>
#include <vector>

#include "pkit/random.hpp"

namespace pkit::fuzz {

struct Check {
  std::string name;
  double value = 0.0;
  double limit = 0.0;
  bool passed = false;
};

/// Measurements of the inversion identities on one instance.
struct InversionMetrics {
  double inverse_identity = 0.0;          // max ||Q Qhat + I||
  double schur = 0.0;                     // Schur form against direct evaluation
  double qhat_gamma_plus_identity = 0.0;  // Qhat Gamma0^+ against its closed form
  double resolvent_difference = 0.0;      // resolvent of Ahat minus resolvent of A
  double inverse_evaluation = 0.0;        // relation-valued realization against -Q^{-1}
  double multivalued_distance = 0.0;      // Ahat(0) against range(Gamma0)
  bool multivalued_equal = false;
  Index kappa = 0;
  Index kappa_hat1 = 0;
  Index kappa_hat2 = 0;
  Index gram_product_negative = 0;
  double affine_defect = 0.0;             // second divided difference of -Q^{-1} - Qhat2
  double split_residual = 0.0;
};

/// sigma_min(Gamma0^+ Gamma0) / (||Gamma0||^2 ||J||): how far range(Gamma0) is
/// from degenerate. The explicit inverse formula loses accuracy like
/// eps / separation^2, so instances below `kNearSingular` are skipped by the
/// 1e-8 identity checks.
double gram_product_separation(const Realization& r);
inline constexpr double kNearSingular = 1e-4;

/// Throws GramProductSingular when the inversion context does not exist.
InversionMetrics inversion_metrics(const Realization& r, random::Rng& rng,
                                   const Tolerances& tol = {});

struct InstanceReport {
  Index index = 0;
  Index dim = 0;
  Index kappa = 0;
  Index coeff_dim = 0;
  bool skipped = false;
  std::string skip_reason;
  std::vector<Check> checks;

  bool failed() const;
};

/// Independent stream for instance `index` of a run seeded with `seed`.
random::Rng instance_rng(std::uint64_t seed, Index index);

/// Inversion, splitting and Jordan checks on instances drawn from `rng`.
/// With `force_singular` the inversion instance gets a repeated Gamma0
/// column so that Gamma0^+ Gamma0 is singular.
InstanceReport check_instance(Index index, random::Rng& rng, Index max_dim,
                              bool force_singular, const Tolerances& tol = {});

struct Options {
  std::uint64_t seed = 0;
  Index count = 100;
  Index max_dim = 6;
  /// Every k-th instance has a singular Gamma0^+ Gamma0 (0 disables).
  Index singular_every = 0;
  /// Worker threads (0: hardware concurrency).
  unsigned threads = 0;
};

struct Summary {
  Options options;
  std::vector<InstanceReport> instances;
  Index passed = 0;
  Index failed = 0;
  Index skipped = 0;
};

Summary run(const Options& options, const Tolerances& tol = {});

/// Deterministic text summary (counts, failures, skip reasons).
std::string format(const Summary& summary);

}  // namespace pkit::fuzz
