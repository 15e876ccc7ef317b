#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "pkit/decomposition.hpp"
#include "pkit/io.hpp"
#include "pkit/jordan.hpp"
#include "pkit/linalg.hpp"
#include "pkit/models.hpp"

namespace pkit::cli {

namespace {

const char* yes_no(bool b) { return b ? "YES" : "NO"; }
const char* true_false(bool b) { return b ? "true" : "false"; }

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

void print_matrix(std::ostream& out, const CMatrix& m, const std::string& indent = "  ") {
  for (Index i = 0; i < m.rows(); ++i) {
    out << indent << "[";
    for (Index j = 0; j < m.cols(); ++j) out << (j ? ", " : "") << io::format_complex(m(i, j));
    out << "]\n";
  }
}

void print_vector(std::ostream& out, const CVector& v) {
  out << "[";
  for (Index i = 0; i < v.size(); ++i) out << (i ? ", " : "") << io::format_complex(v(i));
  out << "]";
}

std::string inertia_text(const Inertia& in) {
  std::ostringstream s;
  s << "plus " << in.plus << ", minus " << in.minus;
  if (in.zero) s << ", zero " << in.zero;
  return s.str();
}

const char* method_name(KappaMethod m) { return m == KappaMethod::Exact ? "exact" : "sampled"; }

std::vector<cplx> default_points() { return {cplx(0, 1), cplx(1, 1), cplx(-1, 0.5)}; }

void print_kappa_line(std::ostream& out, const std::string& label, const KappaEstimate& k) {
  out << label << ": " << k.value << " (" << method_name(k.method) << ")\n";
}

}  // namespace

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::Parse:
      return ParseFailure;
    case ErrorCode::GramProductSingular:
    case ErrorCode::NotMinimal:
    case ErrorCode::NotEigenvalue:
    case ErrorCode::NotInvariant:
    case ErrorCode::DegenerateSubspace:
    case ErrorCode::DegenerateMinimalSubspace:
    case ErrorCode::ProjectorNotJSymmetric:
    case ErrorCode::NoGenerator:
      return PreconditionFailure;
    default:
      return DomainFailure;
  }
}

cplx parse_complex(const std::string& text) {
  const auto comma = text.find(',');
  const std::string re = text.substr(0, comma);
  const std::string im = comma == std::string::npos ? "0" : text.substr(comma + 1);
  auto number = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size() || !std::isfinite(v))
      throw Error(ErrorCode::Parse, "expected RE,IM but got '" + text + "'");
    return v;
  };
  return {number(re), number(im)};
}

int cmd_inspect(const std::string& file, const Tolerances& tol, std::ostream& out) {
  const io::ProblemFile p = io::read_problem(file, tol);
  const Realization& r = p.realization;
  if (!p.name.empty()) out << "name: " << p.name << "\n";
  out << "form: " << (r.form() == Form::Bounded ? "bounded" : "general") << "\n";
  out << "state dimension: " << r.dim() << "\n";
  out << "coefficient dimension: " << r.coeff_dim() << "\n";
  out << "inertia of J: " << inertia_text(r.space().inertia()) << "\n";
  const bool minimal = is_minimal(r, tol);
  out << "minimal: " << true_false(minimal) << "\n";
  const KappaEstimate k = negative_index(r, {}, tol);
  out << "kappa: " << k.value << "\n";
  out << "kappa method: " << method_name(k.method) << "\n";
  const PredicateReport preds = injectivity_predicates(r, tol);
  out << "predicates:\n";
  out << "  Gamma0 injective: " << yes_no(preds.gamma_injective) << "\n";
  out << "  Gamma0+ injective: " << yes_no(preds.gamma_plus_injective) << "\n";
  out << "  Gamma0+ Gamma0 injective: " << yes_no(preds.gram_product_injective) << "\n";
  out << "  minimal: " << yes_no(preds.minimal) << "\n";
  out << "  separating: " << (preds.separating ? yes_no(*preds.separating) : "n/a") << "\n";
  out << "  implications hold: " << yes_no(preds.implications_hold) << "\n";
  return Ok;
}

int cmd_eval(const std::string& file, cplx z, const Tolerances& tol, std::ostream& out) {
  const io::ProblemFile p = io::read_problem(file, tol);
  const CMatrix q = evaluate(p.realization, z, tol);
  out << "z: " << io::format_complex(z) << "\n";
  out << "Q(z):\n";
  print_matrix(out, q);
  return Ok;
}

int cmd_invert(const std::string& file, const std::vector<cplx>& points, const Tolerances& tol,
               std::ostream& out) {
  const io::ProblemFile p = io::read_problem(file, tol);
  const Realization& r = p.realization;
  const InversionContext ctx = build_context(r, tol);
  const std::vector<cplx> zs = points.empty() ? default_points() : points;
  const CMatrix id = linalg::identity(r.coeff_dim());
  out << "inertia of Gamma0+ Gamma0: "
      << inertia_text(hermitian_inertia(ctx.gram_product(), tol.rank)) << "\n";
  double residual = 0.0;
  for (const cplx z : zs) {
    const CMatrix qhat = qhat_evaluate(ctx, z, tol);
    const CMatrix q = evaluate(r, z, tol);
    residual = std::max(residual, linalg::norm2(q * qhat + id));
    out << "Qhat(" << io::format_complex(z) << "):\n";
    print_matrix(out, qhat);
  }
  out << "residual ||Q Qhat + I||: " << sci(residual) << "\n";
  const DecompositionReport split = invert_with_split(r, tol);
  print_kappa_line(out, "kappa", split.kappa_whole);
  out << "kappa_hat_1: " << split.components[0].kappa.value << "\n";
  out << "kappa_hat_2: " << split.components[1].kappa.value << "\n";
  out << "kappa additive: " << yes_no(split.desirable) << "\n";
  out << "split residual: " << sci(split.residual) << "\n";
  for (const auto& note : split.notes) out << "note: " << note << "\n";
  const MultivaluedPartReport mv = verify_multivalued_part(r, std::nullopt, tol);
  out << "reference point: " << io::format_complex(mv.z0) << "\n";
  out << "multivalued part dimension: " << mv.multivalued_dim << "\n";
  out << "multivalued part equals range(Gamma0): " << yes_no(mv.equal) << " (distance "
      << sci(std::max(mv.distance, mv.kernel_distance)) << ")\n";
  return Ok;
}

int cmd_decompose(const std::string& file, const std::string& subspace_file,
                  const Tolerances& tol, std::ostream& out) {
  const io::ProblemFile p = io::read_problem(file, tol);
  const Subspace s = io::read_subspace(subspace_file, p.realization.space(), tol);
  const DecompositionReport rep = split_by_invariant_subspace(p.realization, s, tol);
  for (const auto& c : rep.components) {
    out << c.name << ": dimension " << (c.realization ? c.realization->dim() : 0) << ", kappa "
        << c.kappa.value << " (" << method_name(c.kappa.method) << ")\n";
  }
  out << "kappa sum: " << rep.kappa_sum << "\n";
  print_kappa_line(out, "kappa", rep.kappa_whole);
  out << "desirable: " << yes_no(rep.desirable) << "\n";
  out << "residual: " << sci(rep.residual) << "\n";
  const ConverseProbe probe = split_converse_probe(*rep.components[0].realization,
                                                      *rep.components[1].realization, tol);
  out << "Gamma+ injective on the sum: " << yes_no(probe.gamma_plus_injective) << "\n";
  out << "sum representation minimal: " << yes_no(probe.sum_minimal) << "\n";
  for (const auto& note : rep.notes) out << "note: " << note << "\n";
  return Ok;
}

int cmd_jordan(const std::string& file, double alpha, const Tolerances& tol, std::ostream& out) {
  const io::ProblemFile p = io::read_problem(file, tol);
  const Realization& r = p.realization;
  const AlphaDecomposition dec = alpha_decomposition(r, alpha, tol);
  out << "alpha: " << io::format_real(alpha) << "\n";
  out << "root subspace dimension: " << root_manifold(r, alpha, tol).dim() << "\n";
  out << "non-degenerate chains: " << dec.chain_count << "\n";
  for (std::size_t i = 0; i < dec.blocks.size(); ++i) {
    const AlphaBlock& b = dec.blocks[i];
    out << "block " << i << ": ";
    switch (b.kind) {
      case BlockKind::Positive: out << "K0 positive eigenvectors"; break;
      case BlockKind::Chain: out << "chain of length " << b.chain->length(); break;
      case BlockKind::Remainder: out << "remainder"; break;
    }
    out << ", dimension " << b.basis.cols() << ", kappa " << b.kappa << "\n";
    if (b.generator) {
      out << "  generator h: ";
      print_vector(out, *b.generator);
      out << "\n  regenerated span distance: " << sci(b.generator_distance) << "\n";
    }
  }
  out << "kappa sum: " << dec.kappa_sum << "\n";
  out << "kappa: " << dec.kappa_whole << "\n";
  out << "orthogonality defect: " << sci(dec.orthogonality_defect) << "\n";
  out << "residual: " << sci(dec.residual) << "\n";

  auto report_rate = [&](const std::string& label, const JordanChain& chain) {
    const PoleCancellation eta = pole_cancellation(r, chain, tol);
    const DecayFit fit = decay_rate(eta, 1, 3, tol);
    const long rounded = std::lround(fit.slope);
    out << label << ", eta rate l=" << rounded << " (fitted " << io::format_real(
        std::round(fit.slope * 1000.0) / 1000.0) << ", expected " << chain.length() << "): "
        << (std::abs(fit.slope - static_cast<double>(chain.length())) <= 0.05 ? "PASS" : "FAIL")
        << "\n";
  };
  for (const AlphaBlock& b : dec.blocks) {
    if (b.kind == BlockKind::Positive) {
      for (Index j = 0; j < b.basis.cols(); ++j)
        report_rate("K0-positive eigenvector", JordanChain{alpha, b.basis.col(j)});
    } else if (b.kind == BlockKind::Chain) {
      report_rate("chain of length " + std::to_string(b.chain->length()), *b.chain);
    }
  }
  return Ok;
}

int cmd_fuzz(const fuzz::Options& options, const Tolerances& tol, std::ostream& out) {
  const fuzz::Summary s = fuzz::run(options, tol);
  out << fuzz::format(s);
  return s.failed ? DomainFailure : Ok;
}

int cmd_example1(const Tolerances& tol, std::ostream& out) {
  const Realization r = models::example1();
  out << "Example 1\n";
  out << "J:\n";
  print_matrix(out, r.space().gram());
  out << "A:\n";
  print_matrix(out, r.op_matrix());
  out << "Gamma0:\n";
  print_matrix(out, r.gamma());

  bool match = true;
  for (int k = 0; k < 20; ++k) {
    const cplx z(-2.0 + 0.21 * k, (k % 2 ? 1.0 : -1.0) * (0.3 + 0.11 * k));
    const CMatrix want = models::example1_closed_form(z);
    const double err = linalg::norm2(evaluate(r, z, tol) - want) / linalg::norm2(want);
    match = match && err <= 1e-10;
  }
  out << "Q(z) matches closed form: " << (match ? "PASS" : "FAIL") << "\n";

  const PredicateReport preds = injectivity_predicates(r, tol);
  out << "representation minimal: " << yes_no(is_minimal(r, tol)) << "\n";
  out << "Gamma0 injective: " << yes_no(preds.gamma_injective)
      << ", Gamma0+ injective: " << yes_no(preds.gamma_plus_injective) << "\n";
  out << "Gamma0+ Gamma0 injective: " << yes_no(preds.gram_product_injective) << "\n";
  out << "separating: " << (preds.separating ? yes_no(*preds.separating) : "n/a") << "\n";
  out << "predicate implications hold: " << yes_no(preds.implications_hold) << "\n";

  const GNFunction f = GNFunction::from_realization(r);
  out << "kappa (exact): " << exact_negative_index(r, tol).value << "\n";
  out << "kappa (sampled): " << negative_squares_sampled(f, {}, tol).value << "\n";

  const Realization r1 = models::example1_first();
  const Realization r2 = models::example1_second();
  const double residual = sum_residual(
      f, {GNFunction::from_realization(r1), GNFunction::from_realization(r2)},
      verification_grid(), tol);
  out << "Q = Q1 + Q2: " << (residual <= 1e-10 ? "PASS" : "FAIL") << "\n";
  const Index k1 = exact_negative_index(r1, tol).value;
  const Index k2 = exact_negative_index(r2, tol).value;
  out << "kappa_1: " << k1 << ", kappa_2: " << k2 << "\n";
  const SumMinimalityReport sum_rep = sum_minimality_check(r1, r2, tol);
  out << "component representations minimal: " << yes_no(sum_rep.first_minimal) << ", "
      << yes_no(sum_rep.second_minimal) << "\n";
  out << "Gamma+ injective on the sum: " << yes_no(sum_rep.gamma_plus_injective) << "\n";
  out << "sum representation minimal: " << yes_no(sum_rep.sum_minimal) << "\n";
  out << "sum separating: " << (sum_rep.separating ? yes_no(*sum_rep.separating) : "n/a") << "\n";
  out << "sum implications hold: "
      << yes_no(sum_rep.injective_implies_minimal && sum_rep.minimal_implies_separating) << "\n";

  try {
    build_context(r, tol);
    out << "Gamma0+ Gamma0 invertible: YES\n";
  } catch (const Error& e) {
    if (e.code() != ErrorCode::GramProductSingular) throw;
    out << "Gamma0+ Gamma0 invertible: NO\n";
  }
  return Ok;
}

}  // namespace pkit::cli
