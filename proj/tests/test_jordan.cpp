#include <doctest.h>

#include <algorithm>

#include "oracles.hpp"
#include "pkit/jordan.hpp"
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

}  // namespace

TEST_CASE("root subspaces") {
  CHECK(root_manifold(models::jordan_model(), 0.0).dim() == 2);
  CHECK(root_manifold(models::jordan_model(), 1.0).dim() == 0);
  CHECK(root_manifold(models::diag_model(), 1.0).dim() == 1);
  const Subspace c = root_manifold(models::coupled_model(), 2.0);
  CHECK(c.dim() == 1);
  CHECK(oracle::projector_distance(c.basis(), mat({{0}, {1}, {0}})) < 1e-12);
}

TEST_CASE("canonical chains of the Jordan model") {
  const Realization r = models::jordan_model();
  const std::vector<JordanChain> chains = canonical_chains(r, 0.0);
  REQUIRE(chains.size() == 1);
  const JordanChain& ch = chains[0];
  CHECK(ch.length() == 2);
  CHECK(chain_residual(r.op_matrix(), ch) < 1e-14);
  CHECK(oracle::projector_distance(ch.vectors.col(0), mat({{1}, {0}})) < 1e-14);
  // A non-degenerate chain of length 2: [x_0, x_1] != 0.
  CHECK(std::abs(r.space().inner(ch.vectors.col(0), ch.vectors.col(1))) > 0.5);
  const std::optional<JordanChain> top = maximal_nondegenerate_chain(r, 0.0);
  REQUIRE(top.has_value());
  CHECK(top->length() == 2);

  CHECK(code_of([&] { canonical_chains(r, 1.0); }) == ErrorCode::NotEigenvalue);
  CHECK(code_of([&] { alpha_decomposition(r, 1.0); }) == ErrorCode::NotEigenvalue);
}

TEST_CASE("chain generators in range(Gamma0)") {
  for (const double scale : {1.0, 2.0}) {
    const Realization r = models::jordan_model(scale);
    const JordanChain ch = canonical_chains(r, 0.0)[0];
    const CVector h = chain_generator_in_range(r, ch);
    const CMatrix want = mat({{0}, {1.0 / scale}}) * ch.vectors(0, 0);
    CHECK(oracle::norm(CMatrix(h) - want) < 1e-14);
    const JordanChain again = regenerate_chain(r, ch, h);
    CHECK(oracle::projector_distance(again.vectors, ch.vectors) < 1e-14);
  }
  const Realization d = models::diag_model();
  const JordanChain e = canonical_chains(d, -1.0)[0];
  CHECK(oracle::norm(CMatrix(chain_generator_in_range(d, e)) - mat({{0}, {1}}) * e.vectors(1, 0)) <
        1e-14);
}

TEST_CASE("alpha decompositions of the small models") {
  const AlphaDecomposition j = alpha_decomposition(models::jordan_model(2.0), 0.0);
  REQUIRE(j.blocks.size() == 3);
  CHECK(j.chain_count == 1);
  CHECK(j.blocks[0].kind == BlockKind::Positive);
  CHECK(j.blocks[0].basis.cols() == 0);
  CHECK(j.blocks[1].kind == BlockKind::Chain);
  CHECK(j.blocks[1].kappa == 1);
  CHECK(j.blocks[1].generator_distance < 1e-14);
  CHECK(j.blocks[2].basis.cols() == 0);
  CHECK(j.kappa_sum == j.kappa_whole);
  CHECK(j.residual < 1e-14);

  const AlphaDecomposition d = alpha_decomposition(models::diag_model(), 1.0);
  CHECK(d.chain_count == 0);
  CHECK(d.blocks.front().kind == BlockKind::Positive);
  CHECK(d.blocks.front().basis.cols() == 1);
  CHECK(d.blocks.back().kind == BlockKind::Remainder);
  CHECK(d.blocks.back().kappa == 1);
  CHECK(d.kappa_sum == 1);

  const AlphaDecomposition m = alpha_decomposition(models::diag_model(), -1.0);
  CHECK(m.chain_count == 1);
  CHECK(m.blocks[1].kappa == 1);
  CHECK(m.orthogonality_defect < 1e-14);

  CHECK(code_of([] { alpha_decomposition(models::example1(), 0.0); }) == ErrorCode::NotMinimal);
}

TEST_CASE("pole cancellation on the small models") {
  const Realization r = models::jordan_model();
  const PoleCancellation eta(r, canonical_chains(r, 0.0)[0]);
  const CVector v = eta(0.3);
  CHECK(std::abs(v(0)) < 1e-14);
  CHECK(std::abs(v(1) + 0.09) < 1e-14);
  REQUIRE(eta.top_generator().has_value());
  for (const cplx z : {cplx(0.2, 0.1), cplx(-0.5, 1.0)})
    CHECK(oracle::norm(CMatrix(eta(z) - eta.predicted(z))) < 1e-13);

  const Realization d = models::diag_model();
  const PoleCancellation e(d, canonical_chains(d, 1.0)[0]);
  const cplx z(0.3, 1.0);
  const CVector w = e(z);
  const cplx sign = canonical_chains(d, 1.0)[0].vectors(0, 0);
  CHECK(std::abs(w(0) + (z - 1.0) * sign) < 1e-14);
  CHECK(std::abs(w(1)) < 1e-14);

  CHECK(code_of([&] { eta(0.0); }) == ErrorCode::NotInResolventSet);
}

TEST_CASE("decay rate of the Jordan model over five decades") {
  const Realization r = models::jordan_model();
  const PoleCancellation eta(r, canonical_chains(r, 0.0)[0]);
  const DecayFit fit = decay_rate(eta, 1, 5);
  CHECK(fit.distances.size() == 5);
  CHECK(std::abs(fit.slope - 2.0) <= 0.05);
  const DecayFit k0 = decay_rate(PoleCancellation(models::diag_model(),
                                                  canonical_chains(models::diag_model(), 1.0)[0]));
  CHECK(std::abs(k0.slope - 1.0) <= 0.05);
}

TEST_CASE("planted Jordan structures") {
  random::Rng rng(606);
  for (int t = 0; t < 60; ++t) {
    const random::PlantedJordan pj = random::planted_jordan(rng, 8);
    const Realization& r = pj.realization;
    CAPTURE(t);
    std::vector<Index> planted;
    for (const auto& b : pj.blocks) planted.push_back(b.length);
    std::vector<Index> found;
    for (const JordanChain& ch : canonical_chains(r, pj.alpha)) {
      found.push_back(ch.length());
      CHECK(chain_residual(r.op_matrix(), ch) <= 1e-9);
    }
    std::sort(planted.begin(), planted.end());
    std::sort(found.begin(), found.end());
    CHECK(found == planted);

    const AlphaDecomposition dec = alpha_decomposition(r, pj.alpha);
    CHECK(dec.kappa_whole == pj.kappa);
    CHECK(dec.kappa_sum == pj.kappa);
    CHECK(dec.orthogonality_defect <= 1e-8);
    CHECK(dec.residual <= 1e-8);
    for (const AlphaBlock& b : dec.blocks)
      if (b.kind == BlockKind::Chain) CHECK(b.generator_distance <= 1e-8);

    const PoleCancellation eta(r, pj.gamma_chain);
    const DecayFit fit = decay_rate(eta);
    CHECK(std::abs(fit.slope - static_cast<double>(pj.gamma_chain.length())) <= 0.05);
  }
}
