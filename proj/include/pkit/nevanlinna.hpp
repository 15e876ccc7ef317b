#pragma once

// Operator realizations of generalized Nevanlinna functions, evaluation,
// the Nevanlinna kernel, minimality and the negative index.

#include <cstdint>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "pkit/relations.hpp"

namespace pkit {

enum class Form {
  /// Q(z) = Gamma0^+ (A - z)^{-1} Gamma0 with A a bounded operator.
  Bounded,
  /// Q(z) = Q(z0)^* + (z - conj z0) Gamma^+ (I + (z - z0)(A - z)^{-1}) Gamma
  /// with A a self-adjoint relation.
  General,
};

/// Triplet (K, A, Gamma) representing a matrix function.
class Realization {
 public:
  static Realization bounded(PontryaginSpace space, CMatrix a, CMatrix gamma0,
                             const Tolerances& tol = {});
  static Realization general(PontryaginSpace space, LinearRelation a, CMatrix gamma,
                             cplx z0, CMatrix ref_value_adj, const Tolerances& tol = {});
  /// General form whose constant term is chosen with zero Hermitian part:
  /// Q(z0)^* = -i Im(z0) Gamma^+ Gamma.
  static Realization general(PontryaginSpace space, LinearRelation a, CMatrix gamma,
                             cplx z0, const Tolerances& tol = {});

  Form form() const { return form_; }
  const PontryaginSpace& space() const { return space_; }
  const LinearRelation& op() const { return op_; }
  /// Gamma0 (bounded form) or Gamma (general form); dim K x m.
  const CMatrix& gamma() const { return gamma_; }
  /// The operator A; throws InvalidArgument for general-form realizations.
  const CMatrix& op_matrix() const;
  cplx ref_point() const { return z0_; }
  const CMatrix& ref_value_adj() const { return ref_value_adj_; }

  Index dim() const { return space_.dim(); }
  Index coeff_dim() const { return gamma_.cols(); }

  /// Gamma^+ = Gamma^* J.
  CMatrix gamma_plus() const;

 private:
  Realization(Form form, PontryaginSpace space, LinearRelation op, CMatrix gamma);

  Form form_;
  PontryaginSpace space_;
  LinearRelation op_;
  CMatrix gamma_;
  std::optional<CMatrix> a_;
  cplx z0_{0.0, 0.0};
  CMatrix ref_value_adj_;
};

/// Q(z) of a realization.
CMatrix evaluate(const Realization& r, cplx z, const Tolerances& tol = {});

/// Bounded form to general form at reference point z0: Gamma := (A - z0)^{-1} Gamma0
/// and Q(z0)^* = Gamma0^+ (A - conj z0)^{-1} Gamma0.
Realization to_general(const Realization& r, cplx z0, const Tolerances& tol = {});

/// General form with an operator graph back to bounded form: Gamma0 := (A - z0) Gamma.
/// Throws InvalidArgument when the relation is not an operator graph or when
/// the constant Q(z0)^* differs from the one implied by the bounded form.
Realization to_bounded(const Realization& r, const Tolerances& tol = {});

/// Coefficient table of an explicit rational matrix function
///   sum_j poly[j] z^j + sum_k sum_j poles[k].coeffs[j] (z - poles[k].point)^{-(j+1)}.
struct RationalTable {
  struct Pole {
    cplx point;
    std::vector<CMatrix> coeffs;
  };
  std::vector<CMatrix> poly;
  std::vector<Pole> poles;
};

/// Evaluable complex-matrix-valued function. Immutable; copies share nodes.
class GNFunction {
 public:
  static GNFunction from_realization(Realization r);
  static GNFunction sum(std::vector<GNFunction> terms);
  static GNFunction block_diag(std::vector<GNFunction> blocks);
  /// -f(z)^{-1}.
  static GNFunction inverse_of(GNFunction f);
  static GNFunction rational(RationalTable table);
  /// Scalar 1x1 helpers for the classical witnesses.
  static GNFunction scalar_pole(cplx residue, cplx point);
  static GNFunction constant(CMatrix value);

  Index out_dim() const;
  CMatrix operator()(cplx z, const Tolerances& tol = {}) const;

  /// Underlying realization for realization-backed functions, else null.
  const Realization* realization() const;

  struct Node;

 private:
  explicit GNFunction(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct GNFunction::Node {
  struct RealizationBacked { Realization r; };
  struct Sum { std::vector<GNFunction> terms; };
  struct BlockDiag { std::vector<GNFunction> blocks; };
  struct InverseOf { GNFunction inner; };
  struct ExplicitRational { RationalTable table; };

  std::variant<RealizationBacked, Sum, BlockDiag, InverseOf, ExplicitRational> v;
  Index out_dim = 0;
};

CMatrix evaluate(const GNFunction& f, cplx z, const Tolerances& tol = {});

/// N(z, w) = (Q(z) - Q(w)^*) / (z - conj w); at z = conj w the derivative
/// Q'(z) from a central difference with step 1e-6 max(1, |z|).
CMatrix kernel(const GNFunction& f, cplx z, cplx w, const Tolerances& tol = {});

enum class KappaMethod { Exact, Sampled };

struct KappaEstimate {
  Index value = 0;
  KappaMethod method = KappaMethod::Sampled;
  Index samples = 0;
  std::vector<cplx> witness_points;
};

struct SamplerConfig {
  Index points = 32;
  double re_min = -3.0, re_max = 3.0;
  double im_min = 0.1, im_max = 3.0;
  Index trials = 8;
  std::uint64_t seed = 0x9E3779B9ULL;
};

/// Negative squares of the Nevanlinna kernel over random sample matrices;
/// a lower bound for the index, maximized over independent trials.
KappaEstimate negative_squares_sampled(const GNFunction& f, const SamplerConfig& cfg = {},
                                       const Tolerances& tol = {});

/// Basis of cls{(I + (z - z0)(A - z)^{-1}) Gamma h}; for bounded form the
/// controllable subspace span{A^k Gamma0}.
Subspace minimal_subspace(const Realization& r, const Tolerances& tol = {});

bool is_minimal(const Realization& r, const Tolerances& tol = {});

/// Negative inertia of the Gram matrix restricted to the minimal subspace.
/// Throws DegenerateMinimalSubspace when that restriction is degenerate.
KappaEstimate exact_negative_index(const Realization& r, const Tolerances& tol = {});

/// exact_negative_index, falling back to sampling when it throws.
KappaEstimate negative_index(const Realization& r, const SamplerConfig& cfg = {},
                             const Tolerances& tol = {});

struct SymmetryReport {
  double max_residual = 0.0;
  Index evaluated = 0;
  Index skipped = 0;
};

/// max ||Q(conj z)^* - Q(z)|| over the points where Q is defined.
SymmetryReport check_symmetry(const GNFunction& f, const std::vector<cplx>& points,
                              const Tolerances& tol = {});

struct PredicateReport {
  bool gamma_plus_injective = false;
  bool gamma_injective = false;
  bool gram_product_injective = false;
  bool minimal = false;
  /// (f, Q(z) h) = 0 for all z, h implies f = 0. Bounded form only.
  std::optional<bool> separating;
  /// Every implication that applies to this instance holds.
  bool implications_hold = true;
};

PredicateReport injectivity_predicates(const Realization& r, const Tolerances& tol = {});

/// Markov parameters Gamma0^+ A^k Gamma0, k = 0..n-1, side by side (m x nm).
CMatrix markov_parameters(const Realization& r);

}  // namespace pkit
