#include <doctest.h>

#include "oracles.hpp"
#include "pkit/models.hpp"
#include "pkit/random.hpp"
#include "pkit/relations.hpp"

using namespace pkit;
using oracle::mat;

namespace {

const CMatrix kSwap = mat({{0, 1}, {1, 0}});

// (x, y) belongs to the adjoint of R iff [y, u] = [x, v] for every generator (u, v).
double adjoint_defect(const LinearRelation& r, const LinearRelation& adj) {
  const CMatrix& j = r.space().gram();
  const CMatrix lhs = r.domain_part().adjoint() * j * adj.value_part();
  const CMatrix rhs = r.value_part().adjoint() * j * adj.domain_part();
  return oracle::norm(lhs - rhs);
}

}  // namespace

TEST_CASE("graphs of operators") {
  const LinearRelation z = from_operator(CMatrix::Zero(1, 1), PontryaginSpace::hilbert(1));
  CHECK(z.generators() == 1);
  CHECK(std::abs(z.value_part()(0, 0)) == 0.0);
  const Realization ex = models::example1();
  const LinearRelation g = from_operator(ex.op_matrix(), ex.space());
  CHECK(oracle::norm(g.domain_part() - oracle::eye(4)) == 0.0);
  CHECK(oracle::norm(g.value_part() - ex.op_matrix()) == 0.0);
  const LinearRelation id = from_operator(oracle::eye(3), PontryaginSpace::hilbert(3));
  CHECK(oracle::norm(id.domain_part() - id.value_part()) == 0.0);
  CMatrix op;
  CHECK(is_operator_graph(g, &op));
  CHECK(oracle::norm(op - ex.op_matrix()) < 1e-14);
}

TEST_CASE("adjoint relation examples") {
  const Realization ex = models::example1();
  const LinearRelation g = from_operator(ex.op_matrix(), ex.space());
  CHECK(same_relation(adjoint_relation(g), g));

  // {(0, h)} is its own adjoint: [y, 0] = [x, h] for all h forces x = 0.
  const PontryaginSpace swap(kSwap);
  const LinearRelation mul(swap, CMatrix::Zero(2, 2), oracle::eye(2));
  const LinearRelation adj = adjoint_relation(mul);
  CHECK(same_relation(adj, mul));
  CHECK(multivalued_part(adj).dim() == 2);
  CHECK(is_selfadjoint_relation(mul));

  random::Rng rng(8);
  const CMatrix a = random::gaussian(rng, 3, 3);
  const LinearRelation h = from_operator(a, PontryaginSpace::hilbert(3));
  CHECK(same_relation(adjoint_relation(h), from_operator(a.adjoint(), PontryaginSpace::hilbert(3))));
}

TEST_CASE("adjoint is an involution and satisfies its defining identity") {
  random::Rng rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const Index n = 1 + trial % 6;
    const PontryaginSpace sp = random::random_space(rng, n, trial % (n + 1));
    const Index gens = 1 + trial % (2 * n);
    const LinearRelation r(sp, random::gaussian(rng, n, gens), random::gaussian(rng, n, gens));
    const LinearRelation adj = adjoint_relation(r);
    CHECK(r.generators() + adj.generators() == 2 * n);
    CHECK(adjoint_defect(r, adj) < 1e-9 * (1 + oracle::norm(r.stacked())) *
                                       (1 + oracle::norm(adj.stacked())) * oracle::norm(sp.gram()));
    CHECK(same_relation(adjoint_relation(adj), r));
  }
}

TEST_CASE("self-adjoint relations") {
  const Realization ex = models::example1();
  CHECK(is_selfadjoint_relation(ex.op()));
  CHECK_FALSE(is_selfadjoint_relation(
      from_operator(mat({{0, 1}, {0, 0}}), PontryaginSpace::hilbert(2))));
}

TEST_CASE("multivalued parts") {
  random::Rng rng(1);
  CHECK(multivalued_part(from_operator(random::gaussian(rng, 3, 3), PontryaginSpace::hilbert(3)))
            .dim() == 0);
  const LinearRelation r(PontryaginSpace::hilbert(2), mat({{0}, {0}}), mat({{1}, {0}}));
  const Subspace m = multivalued_part(r);
  REQUIRE(m.dim() == 1);
  CHECK(oracle::projector_distance(m.basis(), mat({{1}, {0}})) < 1e-14);
}

TEST_CASE("resolvents") {
  const PontryaginSpace d(oracle::diag({1.0, -1.0}));
  const CMatrix r0 = resolvent(from_operator(oracle::diag({1.0, -1.0}), d), 0.0);
  CHECK(oracle::norm(r0 - oracle::diag({1.0, -1.0})) < 1e-14);

  const Realization ex = models::example1();
  const CMatrix want = (ex.op_matrix() - oracle::eye(4)).inverse();
  CHECK(oracle::rel_error(resolvent(ex.op(), 1.0), want) < 1e-14);

  CHECK_THROWS_AS(resolvent(ex.op(), 0.0), Error);
  CHECK_FALSE(in_resolvent_set(ex.op(), 0.0));
  CHECK(in_resolvent_set(ex.op(), cplx(0, 1)));

  // A relation with multivalued part: the resolvent annihilates it.
  const LinearRelation mixed(PontryaginSpace::hilbert(2), mat({{1, 0}, {0, 0}}),
                             mat({{2, 0}, {0, 1}}));
  const CMatrix t = resolvent(mixed, cplx(0, 1));
  CHECK(oracle::norm(t * mat({{0}, {1}})) < 1e-14);
  CHECK(std::abs(t(0, 0) - 1.0 / (2.0 - cplx(0, 1))) < 1e-14);
}

TEST_CASE("resolvent round trip through from_resolvent") {
  random::Rng rng(12);
  for (int trial = 0; trial < 15; ++trial) {
    const Index n = 2 + trial % 5;
    const PontryaginSpace sp = random::random_space(rng, n, trial % (n + 1));
    const CMatrix a = random::random_selfadjoint(rng, sp);
    const cplx z0(0.3, 1.7);
    const LinearRelation g = from_operator(a, sp);
    const LinearRelation back = from_resolvent(resolvent(g, z0), z0, sp);
    CHECK(same_relation(back, g));
    CHECK(oracle::rel_error(resolvent(back, cplx(-1, 0.5)),
                            (a - cplx(-1, 0.5) * oracle::eye(n)).inverse()) < 1e-9);
  }
}

TEST_CASE("direct sums of relations") {
  const Realization r1 = models::example1_first();
  const Realization r2 = models::example1_second();
  const LinearRelation sum = relation_direct_sum(r1.op(), r2.op());
  const Realization ex = models::example1();
  CHECK(same_relation(sum, ex.op()));

  const LinearRelation empty(PontryaginSpace(), CMatrix(0, 0), CMatrix(0, 0));
  CHECK(same_relation(relation_direct_sum(ex.op(), empty), ex.op()));

  const LinearRelation m1(PontryaginSpace::hilbert(1), mat({{0}}), mat({{1}}));
  const LinearRelation m2(PontryaginSpace::hilbert(2), mat({{0}, {0}}), mat({{1}, {1}}));
  const Subspace mp = multivalued_part(relation_direct_sum(m1, m2));
  CHECK(mp.dim() == 2);
  CHECK(oracle::projector_distance(mp.basis(), mat({{1, 0}, {0, 1}, {0, 1}})) < 1e-14);
}
