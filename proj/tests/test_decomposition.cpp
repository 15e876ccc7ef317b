#include <doctest.h>

#include <algorithm>

#include "oracles.hpp"
#include "pkit/decomposition.hpp"
#include "pkit/models.hpp"
#include "pkit/random.hpp"

using namespace pkit;
using oracle::mat;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

bool has_note(const DecompositionReport& rep, const std::string& note) {
  return std::find(rep.notes.begin(), rep.notes.end(), note) != rep.notes.end();
}

}  // namespace

TEST_CASE("split along an invariant subspace of the diagonal model") {
  const Realization r = models::diag_model();
  const Subspace s(r.space(), mat({{1}, {0}}));
  const DecompositionReport rep = split_by_invariant_subspace(r, s);
  REQUIRE(rep.components.size() == 2);
  CHECK(rep.components[0].kappa.value == 0);
  CHECK(rep.components[1].kappa.value == 1);
  CHECK(rep.kappa_sum == 1);
  CHECK(rep.kappa_whole.value == 1);
  CHECK(rep.desirable);
  CHECK(rep.residual <= 1e-14);
  const cplx z(0.3, 1.2);
  CHECK(std::abs(evaluate(*rep.components[0].realization, z)(0, 0) - 1.0 / (1.0 - z)) < 1e-14);
  CHECK(std::abs(evaluate(*rep.components[1].realization, z)(1, 1) - 1.0 / (1.0 + z)) < 1e-14);
}

TEST_CASE("split preconditions") {
  const Realization d = models::diag_model();
  CHECK(code_of([&] { split_by_invariant_subspace(d, Subspace(d.space(), mat({{1}, {1}}))); }) ==
        ErrorCode::DegenerateSubspace);
  const Realization c = models::coupled_model();
  CHECK(code_of([&] { split_by_invariant_subspace(c, Subspace(c.space(), mat({{1}, {0}, {0}}))); }) ==
        ErrorCode::NotInvariant);
  CHECK(code_of([&] { split_by_invariant_subspace(d, Subspace(c.space(), mat({{1}, {0}, {0}}))); }) ==
        ErrorCode::DimensionMismatch);
  const Realization e = models::example1();
  CHECK(code_of([&] { split_by_invariant_subspace(e, Subspace(e.space(), mat({{1}, {0}, {0}, {0}}))); }) ==
        ErrorCode::NotMinimal);
}

TEST_CASE("random invariant splits have additive negative indices") {
  random::Rng rng(404);
  int checked = 0;
  for (int t = 0; t < 60; ++t) {
    const Index n = 2 + t % 6;
    const random::InvariantInstance inst = random::invariant_instance(rng, n, 1 + t % n);
    DecompositionReport rep;
    try {
      rep = split_by_invariant_subspace(inst.realization, inst.subspace);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotMinimal);
      continue;
    }
    ++checked;
    CHECK(rep.residual <= 1e-8);
    CHECK(rep.desirable);
    CHECK(rep.components[0].kappa.value == inst.kappa1);
    CHECK(rep.components[1].kappa.value == inst.kappa2);
    CHECK(rep.kappa_whole.value == inst.kappa1 + inst.kappa2);
  }
  CHECK(checked > 40);
}

TEST_CASE("sums and block-diagonal compositions") {
  const Realization sum = sum_realizations(models::example1_first(), models::example1_second());
  CHECK(sum.dim() == 4);
  for (const cplx z : verification_grid())
    CHECK(oracle::rel_error(evaluate(sum, z), models::example1_closed_form(z)) < 1e-14);

  const Realization bd = block_diag_realization(models::diag_model(), models::jordan_model());
  const cplx z(0.4, 0.9);
  const CMatrix v = evaluate(bd, z);
  CHECK(oracle::rel_error(CMatrix(v.topLeftCorner(2, 2)), evaluate(models::diag_model(), z)) < 1e-14);
  CHECK(oracle::rel_error(CMatrix(v.bottomRightCorner(2, 2)), evaluate(models::jordan_model(), z)) <
        1e-14);
  CHECK(oracle::norm(v.topRightCorner(2, 2)) < 1e-15);
  const GNFunction f = block_diag(GNFunction::from_realization(models::diag_model()),
                                  GNFunction::from_realization(models::jordan_model()));
  CHECK(oracle::rel_error(f(z), v) < 1e-14);

  CHECK(code_of([] { sum_realizations(models::diag_model(), models::scalar_pole_model(1.0, 1.0)); }) ==
        ErrorCode::DimensionMismatch);
}

TEST_CASE("minimality of the sum in the counterexample") {
  const SumMinimalityReport rep =
      sum_minimality_check(models::example1_first(), models::example1_second());
  CHECK(rep.first_minimal);
  CHECK(rep.second_minimal);
  CHECK_FALSE(rep.gamma_plus_injective);
  CHECK_FALSE(rep.sum_minimal);
  CHECK(rep.first_gamma_injective);
  REQUIRE(rep.separating.has_value());
  CHECK(*rep.separating);
  CHECK(rep.injective_implies_minimal);
  CHECK(rep.minimal_implies_separating);

  const ConverseProbe probe =
      split_converse_probe(models::example1_first(), models::example1_second());
  CHECK(probe.components_minimal);
  CHECK(probe.sum_matches);
  CHECK(probe.kappa1 == 0);
  CHECK(probe.kappa2 == 1);
  CHECK(probe.kappa_sum_function == 1);
  CHECK(probe.kappa_additive);
  CHECK_FALSE(probe.gamma_plus_injective);
  CHECK(probe.converse_fails);
  CHECK(probe.additivity_holds);

  const Realization p = Realization::bounded(PontryaginSpace::hilbert(1), mat({{1}}), mat({{1, 0}}));
  const Realization q = Realization::bounded(PontryaginSpace(mat({{-1}})), mat({{-1}}), mat({{0, 1}}));
  const ConverseProbe d = split_converse_probe(p, q);
  CHECK(d.gamma_plus_injective);
  CHECK(d.sum_minimal);
  CHECK(d.kappa_additive);
  CHECK_FALSE(d.converse_fails);
}

TEST_CASE("local split at an eigenvalue") {
  const Realization c = models::coupled_model();
  const DecompositionReport rep = local_split(c, 2.0);
  CHECK(rep.residual <= 1e-12);
  CHECK(rep.components[0].realization->dim() == 1);
  CHECK(rep.components[1].realization->dim() == 2);
  const LocalSplitChecks chk = local_split_checks(c, 2.0, rep);
  CHECK(chk.remainder_regular_at_alpha);
  CHECK(chk.root_distance <= 1e-10);
  const cplx z(1.0, 1.0);
  CHECK(std::abs(evaluate(*rep.components[0].realization, z)(1, 1) - 1.0 / (2.0 - z)) < 1e-14);

  const DecompositionReport j = local_split(models::jordan_model(), 0.0);
  CHECK(j.components[0].realization->dim() == 2);
  CHECK(j.components[1].realization->dim() == 0);
  CHECK(j.residual <= 1e-12);

  CHECK(code_of([&] { local_split(c, 5.0); }) == ErrorCode::NotEigenvalue);
  CHECK(code_of([&] { local_split(to_general(c, cplx(0, 1)), 2.0); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("split of the inverse") {
  const DecompositionReport d = invert_with_split(models::diag_model());
  CHECK(d.components[0].kappa.value == 1);
  CHECK(d.components[1].kappa.value == 0);
  CHECK(d.components[1].realization->dim() == 0);
  CHECK(d.residual <= 1e-14);
  CHECK(d.desirable);

  const DecompositionReport c = invert_with_split(models::coupled_model());
  CHECK(c.components[0].kappa.value == 0);
  CHECK(c.components[1].kappa.value == 1);
  CHECK(c.kappa_whole.value == 1);
  CHECK(c.desirable);
  CHECK(c.residual <= 1e-12);

  // The complement e2 is unreachable, so Qhat2 vanishes identically.
  const Realization r1 = Realization::bounded(PontryaginSpace(oracle::diag({1.0, -1.0})),
                                              oracle::diag({2.0, 3.0}), mat({{1}, {0}}));
  const DecompositionReport n = invert_with_split(r1);
  CHECK(n.components[1].kappa.value == 0);
  CHECK(has_note(n, "Qhat2 representation is not minimal"));
  CHECK(n.residual <= 1e-14);
  const cplx z(0.5, 2.0);
  CHECK(std::abs(n.components[0].function(z)(0, 0) - (z - 2.0)) < 1e-14);

  CHECK(code_of([] { invert_with_split(models::example1()); }) == ErrorCode::GramProductSingular);
}

TEST_CASE("split of the inverse on random instances") {
  random::Rng rng(505);
  int checked = 0;
  for (int t = 0; t < 60; ++t) {
    const Realization r = random::random_instance(rng, 2, 7);
    DecompositionReport rep;
    try {
      rep = invert_with_split(r);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::GramProductSingular);
      continue;
    }
    ++checked;
    CHECK(rep.residual <= 1e-8);
    const InversionContext ctx = build_context(r);
    CHECK(rep.components[0].kappa.value == hermitian_inertia(ctx.gram_product()).minus);
    const Realization& q2 = *rep.components[1].realization;
    CHECK(is_selfadjoint(q2.op_matrix(), q2.space()));
    if (is_minimal(r)) CHECK(rep.kappa_sum == rep.kappa_whole.value);
  }
  CHECK(checked > 40);
}
