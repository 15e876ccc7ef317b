#include "pkit/fuzz.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>
#include <thread>

#include "pkit/io.hpp"
#include "pkit/linalg.hpp"

namespace pkit::fuzz {

namespace {

constexpr double kIdentityTol = 1e-8;

bool evaluation_failure(const Error& e) {
  return e.code() == ErrorCode::NotInResolventSet || e.code() == ErrorCode::SingularValue ||
         e.code() == ErrorCode::SchurSingular;
}

double rel(const CMatrix& diff, const CMatrix& ref) {
  return linalg::norm2(diff) / std::max(1.0, linalg::norm2(ref));
}

void add(InstanceReport& rep, std::string name, double value, double limit) {
  rep.checks.push_back({std::move(name), value, limit, value <= limit});
}

// Runs one group of checks; a library error inside it becomes a failed check.
void section(InstanceReport& rep, const std::string& name, const std::function<void()>& body) {
  try {
    body();
  } catch (const Error& e) {
    rep.checks.push_back({name + " (" + std::string(to_string(e.code())) + ": " + e.what() + ")",
                          1.0, 0.0, false});
  }
}

}  // namespace

InversionMetrics inversion_metrics(const Realization& r, random::Rng& rng,
                                   const Tolerances& tol) {
  const InversionContext ctx = build_context(r, tol);
  const Index m = r.coeff_dim();
  const CMatrix id = linalg::identity(m);
  InversionMetrics out;

  std::uniform_real_distribution<double> re(-3.0, 3.0), im(0.1, 3.0);
  std::vector<cplx> points;
  for (int k = 0; k < 10; ++k) {
    const double x = re(rng);
    const double y = im(rng);
    points.emplace_back(x, y);
  }

  std::vector<cplx> good;
  for (const cplx z : points) {
    try {
      const CMatrix q = evaluate(r, z, tol);
      const CMatrix qhat = qhat_evaluate(ctx, z, tol);
      out.inverse_identity = std::max(out.inverse_identity, linalg::norm2(q * qhat + id));
      out.schur = std::max(out.schur, rel(schur_evaluate(ctx, z, tol) - q, q));
      const CMatrix lhs = qhat * r.gamma_plus();
      out.qhat_gamma_plus_identity =
          std::max(out.qhat_gamma_plus_identity, rel(lhs - qhat_gamma_plus(ctx, z, tol), lhs));
      good.push_back(z);
    } catch (const Error& e) {
      if (!evaluation_failure(e)) throw;
    }
  }

  const cplx z0 = pick_reference_point(r, tol);
  const Realization g = to_general(r, z0, tol);
  const Realization inv = inverse_realization(r, z0, tol);
  for (const cplx z : good) {
    try {
      const CMatrix qinv =
          linalg::inverse(evaluate(r, z, tol), tol.singular, ErrorCode::SingularValue, "Q(z)");
      const CMatrix lhs = resolvent(inv.op(), z, tol) - resolvent(g.op(), z, tol);
      const CMatrix rhs =
          -gamma_at(g, z, tol) * qinv * gamma_plus(gamma_at(g, std::conj(z), tol), g.space());
      out.resolvent_difference = std::max(out.resolvent_difference, rel(lhs - rhs, lhs));
      out.inverse_evaluation =
          std::max(out.inverse_evaluation, rel(evaluate(inv, z, tol) + qinv, qinv));
    } catch (const Error& e) {
      if (!evaluation_failure(e)) throw;
    }
  }

  const MultivaluedPartReport mv = verify_multivalued_part(r, z0, tol);
  out.multivalued_distance = std::max(mv.distance, mv.kernel_distance);
  out.multivalued_equal = mv.equal;

  const DecompositionReport split = invert_with_split(r, tol);
  out.kappa = split.kappa_whole.value;
  out.kappa_hat1 = split.components[0].kappa.value;
  out.kappa_hat2 = split.components[1].kappa.value;
  out.gram_product_negative = hermitian_inertia(ctx.gram_product(), tol.rank).minus;
  out.split_residual = split.residual;

  // -Q^{-1} - Qhat2 must be affine: its second divided difference vanishes.
  const GNFunction& qhat2 = split.components[1].function;
  std::vector<std::pair<cplx, CMatrix>> d;
  for (const cplx z : good) {
    if (d.size() == 3) break;
    try {
      const CMatrix qinv =
          linalg::inverse(evaluate(r, z, tol), tol.singular, ErrorCode::SingularValue, "Q(z)");
      d.emplace_back(z, CMatrix(-qinv - qhat2(z, tol)));
    } catch (const Error& e) {
      if (!evaluation_failure(e)) throw;
    }
  }
  if (d.size() == 3) {
    const auto& [z1, d1] = d[0];
    const auto& [z2, d2] = d[1];
    const auto& [z3, d3] = d[2];
    const CMatrix dd = ((d3 - d2) / (z3 - z2) - (d2 - d1) / (z2 - z1)) / (z3 - z1);
    double scale = 1.0;
    for (const auto& p : d) scale = std::max(scale, linalg::norm2(p.second));
    out.affine_defect = linalg::norm2(dd) / scale;
  }
  return out;
}

double gram_product_separation(const Realization& r) {
  if (r.coeff_dim() == 0) return 1.0;
  const CMatrix g = r.gamma_plus() * r.gamma();
  const RVector s = linalg::singular_values(g);
  const double gn = linalg::norm2(r.gamma());
  const double scale = gn * gn * r.space().gram_norm();
  return scale > 0.0 ? s(s.size() - 1) / scale : 0.0;
}

bool InstanceReport::failed() const {
  return std::any_of(checks.begin(), checks.end(), [](const Check& c) { return !c.passed; });
}

random::Rng instance_rng(std::uint64_t seed, Index index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return random::Rng(seq);
}

InstanceReport check_instance(Index index, random::Rng& rng, Index max_dim, bool force_singular,
                              const Tolerances& tol) {
  InstanceReport rep;
  rep.index = index;
  max_dim = std::max<Index>(max_dim, 2);

  Realization r = random::random_instance(rng, 2, max_dim);
  if (force_singular) {
    CMatrix g(r.dim(), std::max<Index>(2, r.coeff_dim()));
    g.leftCols(r.coeff_dim()) = r.gamma();
    if (r.coeff_dim() < 2) g.col(1) = r.gamma().col(0);
    g.col(g.cols() - 1) = g.col(0);
    r = Realization::bounded(r.space(), r.op_matrix(), g, tol);
  }
  rep.dim = r.dim();
  rep.kappa = r.space().neg_index();
  rep.coeff_dim = r.coeff_dim();

  section(rep, "realization", [&] {
    const GNFunction f = GNFunction::from_realization(r);
    add(rep, "symmetry", check_symmetry(f, verification_grid(), tol).max_residual, kIdentityTol);
    try {
      const Index exact = exact_negative_index(r, tol).value;
      const Index sampled = negative_squares_sampled(f, {}, tol).value;
      add(rep, "kappa_sampled_vs_exact", std::abs(static_cast<double>(exact - sampled)), 0.0);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DegenerateMinimalSubspace) throw;
    }
    add(rep, "predicate_implications",
        injectivity_predicates(r, tol).implications_hold ? 0.0 : 1.0, 0.0);
  });

  section(rep, "inversion", [&] {
    InversionMetrics mtr;
    if (const double sep = gram_product_separation(r); sep > 0.0 && sep < kNearSingular) {
      try {
        build_context(r, tol);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::GramProductSingular) throw;
        rep.skipped = true;
        rep.skip_reason = "Gamma0^+ Gamma0 singular";
        return;
      }
      rep.skipped = true;
      rep.skip_reason = "Gamma0^+ Gamma0 nearly singular";
      return;
    }
    try {
      mtr = inversion_metrics(r, rng, tol);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::GramProductSingular) throw;
      rep.skipped = true;
      rep.skip_reason = "Gamma0^+ Gamma0 singular";
      return;
    }
    add(rep, "inverse_identity", mtr.inverse_identity, kIdentityTol);
    add(rep, "schur_form", mtr.schur, kIdentityTol);
    add(rep, "qhat_gamma_plus", mtr.qhat_gamma_plus_identity, kIdentityTol);
    add(rep, "resolvent_difference", mtr.resolvent_difference, kIdentityTol);
    add(rep, "inverse_realization", mtr.inverse_evaluation, kIdentityTol);
    add(rep, "multivalued_part", mtr.multivalued_distance, kIdentityTol);
    add(rep, "inverse_kappa_sum",
        std::abs(static_cast<double>(mtr.kappa_hat1 + mtr.kappa_hat2 - mtr.kappa)), 0.0);
    add(rep, "inverse_kappa_hat1",
        std::abs(static_cast<double>(mtr.kappa_hat1 - mtr.gram_product_negative)), 0.0);
    add(rep, "inverse_affine_part", mtr.affine_defect, kIdentityTol);
    add(rep, "inverse_split", mtr.split_residual, kIdentityTol);
  });

  section(rep, "invariant_split", [&] {
    const Index n = std::uniform_int_distribution<Index>(2, max_dim)(rng);
    const Index m = std::uniform_int_distribution<Index>(1, n)(rng);
    const random::InvariantInstance inst = random::invariant_instance(rng, n, m);
    const DecompositionReport split =
        split_by_invariant_subspace(inst.realization, inst.subspace, tol);
    add(rep, "split_residual", split.residual, kIdentityTol);
    add(rep, "split_kappa_sum",
        std::abs(static_cast<double>(split.kappa_sum - split.kappa_whole.value)), 0.0);
    const ConverseProbe probe = split_converse_probe(*split.components[0].realization,
                                                     *split.components[1].realization, tol);
    add(rep, "split_injective_sum", probe.additivity_holds ? 0.0 : 1.0, 0.0);
  });

  section(rep, "jordan", [&] {
    const random::PlantedJordan pj = random::planted_jordan(rng, max_dim);
    const AlphaDecomposition dec = alpha_decomposition(pj.realization, pj.alpha, tol);
    add(rep, "jordan_orthogonality", dec.orthogonality_defect, kIdentityTol);
    add(rep, "jordan_kappa_sum",
        std::abs(static_cast<double>(dec.kappa_sum - dec.kappa_whole)) +
            std::abs(static_cast<double>(dec.kappa_whole - pj.kappa)),
        0.0);
    double gen = 0.0, chain = 0.0;
    for (const auto& b : dec.blocks) {
      gen = std::max(gen, b.generator_distance);
      if (b.chain) chain = std::max(chain, chain_residual(pj.realization.op_matrix(), *b.chain));
    }
    add(rep, "jordan_generators", gen, kIdentityTol);
    add(rep, "jordan_chain_residual", chain, 1e-9);
    add(rep, "jordan_sum", dec.residual, kIdentityTol);
    const PoleCancellation eta = pole_cancellation(pj.realization, pj.gamma_chain, tol);
    double worst = 0.0;
    for (const cplx z : verification_grid()) {
      const CVector want = eta.predicted(z);
      worst = std::max(worst, (eta(z, tol) - want).norm() / want.norm());
    }
    add(rep, "pole_cancellation", worst, 1e-7);
    const DecayFit fit = decay_rate(eta, 1, 3, tol);
    add(rep, "pole_cancellation_rate",
        std::abs(fit.slope - static_cast<double>(pj.gamma_chain.length())), 0.05);
  });
  return rep;
}

Summary run(const Options& options, const Tolerances& tol) {
  Summary s;
  s.options = options;
  const Index count = std::max<Index>(options.count, 0);
  s.instances.resize(static_cast<std::size_t>(count));
  unsigned threads = options.threads ? options.threads : std::thread::hardware_concurrency();
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<Index>(count, 1))));

  std::atomic<Index> next{0};
  auto worker = [&] {
    for (Index i = next++; i < count; i = next++) {
      random::Rng rng = instance_rng(options.seed, i);
      const bool singular = options.singular_every > 0 && (i + 1) % options.singular_every == 0;
      s.instances[static_cast<std::size_t>(i)] =
          check_instance(i, rng, options.max_dim, singular, tol);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  for (const auto& inst : s.instances) {
    if (inst.failed())
      ++s.failed;
    else if (inst.skipped)
      ++s.skipped;
    else
      ++s.passed;
  }
  return s;
}

std::string format(const Summary& s) {
  std::ostringstream out;
  out << "fuzz seed=" << s.options.seed << " count=" << s.options.count
      << " max_dim=" << s.options.max_dim << "\n";
  out << "instances: " << s.instances.size() << "\n";
  out << "passed: " << s.passed << "\n";
  out << "failed: " << s.failed << "\n";
  out << "skipped: " << s.skipped << "\n";
  std::map<std::string, Index> reasons;
  for (const auto& inst : s.instances)
    if (inst.skipped) ++reasons[inst.skip_reason];
  for (const auto& [reason, n] : reasons) out << "  skipped (" << reason << "): " << n << "\n";
  for (const auto& inst : s.instances)
    for (const auto& c : inst.checks)
      if (!c.passed)
        out << "  instance " << inst.index << " (dim " << inst.dim << ", kappa " << inst.kappa
            << "): " << c.name << " = " << io::format_real(c.value) << " > "
            << io::format_real(c.limit) << "\n";
  return out.str();
}

}  // namespace pkit::fuzz
