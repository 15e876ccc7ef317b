#include <doctest.h>

#include "oracles.hpp"
#include "pkit/pontryagin.hpp"
#include "pkit/models.hpp"
#include "pkit/random.hpp"

using namespace pkit;
using oracle::mat;

namespace {

const CMatrix kSwap = mat({{0, 1}, {1, 0}});

CMatrix example1_gram() {
  CMatrix j = CMatrix::Zero(4, 4);
  j(0, 0) = j(1, 1) = 1.0;
  j(2, 3) = j(3, 2) = 1.0;
  return j;
}

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("inertia of small Gram matrices") {
  CHECK(hermitian_inertia(oracle::diag({1.0, -1.0})) == Inertia{1, 0, 1});
  CHECK(hermitian_inertia(kSwap) == Inertia{1, 0, 1});
  CHECK(hermitian_inertia(example1_gram()) == Inertia{3, 0, 1});
  CHECK(hermitian_inertia(oracle::diag({1.0, 0.0, -2.0})) == Inertia{1, 1, 1});
  CHECK(code_of([] { hermitian_inertia(mat({{1, 1}, {0, 1}})); }) == ErrorCode::NotHermitian);
}

TEST_CASE("inertia agrees with the eigenvalue oracle on random Hermitian matrices") {
  random::Rng rng(11);
  for (int t = 0; t < 30; ++t) {
    const Index n = 1 + t % 7;
    const Index kappa = t % (n + 1);
    const PontryaginSpace sp = random::random_space(rng, n, kappa);
    const Inertia in = hermitian_inertia(sp.gram());
    const oracle::Signs s = oracle::inertia(sp.gram());
    CHECK(in.minus == s.minus);
    CHECK(in.plus == s.plus);
    CHECK(sp.neg_index() == kappa);
  }
}

TEST_CASE("Pontryagin spaces reject non-Hermitian or singular Gram matrices") {
  CHECK(code_of([] { PontryaginSpace(mat({{1, 2}, {0, 1}})); }) == ErrorCode::NotHermitian);
  CHECK_THROWS_AS(PontryaginSpace(mat({{1, 1}, {1, 1}})), Error);
  const PontryaginSpace h = PontryaginSpace::hilbert(3);
  CHECK(h.neg_index() == 0);
  CHECK(h.dim() == 3);
  CHECK(PontryaginSpace().dim() == 0);
}

TEST_CASE("inner product convention [x, y] = y^* J x") {
  const PontryaginSpace sp(kSwap);
  const CVector x = mat({{1}, {cplx(0, 1)}});
  const CVector y = mat({{2}, {3}});
  const cplx want = (y.adjoint() * kSwap * x)(0, 0);
  CHECK(std::abs(sp.inner(x, y) - want) < 1e-15);
  CHECK(std::abs(sp.inner(y, x) - std::conj(want)) < 1e-15);
}

TEST_CASE("J-adjoint and Gamma^+") {
  const Realization ex = models::example1();
  const CMatrix gp = gamma_plus(ex.gamma(), ex.space());
  CHECK(oracle::norm(gp - mat({{1, 0, 1, 0}, {0, 1, 0, 1}})) == 0.0);

  const PontryaginSpace sp(example1_gram());
  CHECK(oracle::norm(j_adjoint(oracle::eye(4), sp) - oracle::eye(4)) < 1e-15);

  random::Rng rng(2);
  const CMatrix t = random::gaussian(rng, 3, 3);
  CHECK(oracle::norm(j_adjoint(t, PontryaginSpace::hilbert(3)) - t.adjoint()) < 1e-14);
}

TEST_CASE("J-adjoint properties on random spaces") {
  random::Rng rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const Index n = 2 + trial % 5;
    const PontryaginSpace sp = random::random_space(rng, n, trial % (n + 1));
    const CMatrix t = random::gaussian(rng, n, n);
    const CMatrix ta = j_adjoint(t, sp);
    CHECK(oracle::rel_error(j_adjoint(ta, sp), t) < 1e-10);
    const CVector x = random::gaussian(rng, n, 1);
    const CVector y = random::gaussian(rng, n, 1);
    CHECK(std::abs(sp.inner(t * x, y) - sp.inner(x, ta * y)) <
          1e-10 * (1.0 + oracle::norm(t)) * oracle::norm(sp.gram()) * x.norm() * y.norm());
    const CMatrix h = random::random_selfadjoint(rng, sp);
    CHECK(is_selfadjoint(h, sp));
  }
}

TEST_CASE("self-adjointness examples") {
  const Realization ex = models::example1();
  CHECK(is_selfadjoint(ex.op_matrix(), ex.space()));
  const CMatrix nil = mat({{0, 1}, {0, 0}});
  CHECK(is_selfadjoint(nil, PontryaginSpace(kSwap)));
  CHECK_FALSE(is_selfadjoint(nil, PontryaginSpace::hilbert(2)));
}

TEST_CASE("subspace Gram matrices") {
  const PontryaginSpace swap(kSwap);
  CHECK(oracle::norm(subspace_gram(Subspace(swap, mat({{1}, {0}})))) == 0.0);
  CHECK(oracle::norm(subspace_gram(Subspace(swap, oracle::eye(2))) - kSwap) == 0.0);
  const PontryaginSpace d(oracle::diag({1.0, -1.0}));
  CHECK(oracle::norm(subspace_gram(Subspace(d, mat({{1}, {1}})))) == 0.0);
  CHECK_FALSE(is_nondegenerate(Subspace(d, mat({{1}, {1}}))));
  CHECK(is_nondegenerate(Subspace(d, mat({{1}, {0}}))));
  CHECK_THROWS_AS(Subspace(d, mat({{1, 2}, {1, 2}})), Error);
}

TEST_CASE("J-orthogonal projections") {
  const PontryaginSpace d(oracle::diag({1.0, -1.0}));
  CHECK(oracle::norm(orthogonal_projection(Subspace(d, oracle::eye(2))) - oracle::eye(2)) < 1e-15);
  CHECK(oracle::norm(orthogonal_projection(Subspace(d, mat({{1}, {0}}))) -
                     oracle::diag({1.0, 0.0})) < 1e-15);
  CHECK(code_of([] {
          orthogonal_projection(Subspace(PontryaginSpace(kSwap), mat({{1}, {0}})));
        }) == ErrorCode::DegenerateSubspace);
}

TEST_CASE("projection and complement properties on random non-degenerate subspaces") {
  random::Rng rng(33);
  int checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const Index n = 2 + trial % 6;
    const PontryaginSpace sp = random::random_space(rng, n, trial % (n + 1));
    const Index d = 1 + trial % (n - 1);
    const Subspace s(sp, random::gaussian(rng, n, d));
    if (!is_nondegenerate(s)) continue;
    ++checked;
    const CMatrix e = orthogonal_projection(s);
    CHECK(oracle::rel_error(e * e, e) < 1e-9);
    CHECK(oracle::rel_error(j_adjoint(e, sp), e) < 1e-9);
    CHECK(oracle::projector_distance(e * s.basis(), s.basis()) < 1e-9);
    const Subspace c = orthogonal_complement(s);
    CHECK(c.dim() == n - d);
    CHECK(oracle::norm(s.basis().adjoint() * sp.gram() * c.basis()) <
          1e-9 * oracle::norm(sp.gram()) * oracle::norm(s.basis()) * (1 + oracle::norm(c.basis())));
    CHECK(subspace_inertia(s).minus + subspace_inertia(c).minus == sp.neg_index());
    const Compression comp = compress(s);
    CHECK(oracle::norm(comp.basis.adjoint() * comp.basis - oracle::eye(d)) < 1e-12);
    CHECK(comp.space.neg_index() == subspace_inertia(s).minus);
  }
  CHECK(checked > 20);
}

TEST_CASE("direct sums") {
  const PontryaginSpace sum = direct_sum(PontryaginSpace::hilbert(2), PontryaginSpace(kSwap));
  CHECK(oracle::norm(sum.gram() - example1_gram()) == 0.0);
  CHECK(sum.neg_index() == 1);
  const PontryaginSpace x(oracle::diag({1.0, -1.0}));
  CHECK(oracle::norm(direct_sum(x, PontryaginSpace()).gram() - x.gram()) == 0.0);
  CHECK(direct_sum(x, x).neg_index() == 2);
}

TEST_CASE("signature basis") {
  random::Rng rng(4);
  const PontryaginSpace sp = random::random_space(rng, 5, 2);
  const SignatureBasis sb = signature_basis(sp);
  const CMatrix g = sb.basis.adjoint() * sp.gram() * sb.basis;
  CHECK(oracle::rel_error(g, sb.signs.cast<cplx>().asDiagonal().toDenseMatrix()) < 1e-10);
  CHECK((sb.signs.array() < 0).count() == 2);
}
