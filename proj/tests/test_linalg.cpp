#include <doctest.h>

#include "oracles.hpp"
#include "pkit/linalg.hpp"
#include "pkit/random.hpp"

using namespace pkit;
using oracle::mat;

TEST_CASE("norm2 and singular values") {
  CHECK(linalg::norm2(oracle::diag({3.0, -4.0})) == doctest::Approx(4.0));
  CHECK(linalg::norm2(CMatrix(0, 0)) == 0.0);
  const RVector s = linalg::singular_values(oracle::diag({1.0, 5.0, 2.0}));
  CHECK(s(0) == doctest::Approx(5.0));
  CHECK(s(2) == doctest::Approx(1.0));
}

TEST_CASE("rank, range and null space agree with a full-pivot LU") {
  random::Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const CMatrix left = random::gaussian(rng, 6, 3);
    const CMatrix right = random::gaussian(rng, 3, 5);
    const CMatrix m = left * right;
    CHECK(linalg::rank(m, 1e-9) == 3);
    CHECK(oracle::lu_rank(m) == 3);
    const CMatrix n = linalg::null_space(m, 1e-9);
    CHECK(n.cols() == 2);
    CHECK(oracle::norm(m * n) < 1e-10 * oracle::norm(m));
    const CMatrix o = linalg::orth(m, 1e-9);
    CHECK(o.cols() == 3);
    CHECK(oracle::norm(o.adjoint() * o - oracle::eye(3)) < 1e-12);
    CHECK(oracle::projector_distance(o, left) < 1e-10);
  }
}

TEST_CASE("null space of a zero or empty matrix") {
  CHECK(linalg::null_space(CMatrix::Zero(2, 3), 1e-9).cols() == 3);
  CHECK(linalg::null_space(CMatrix(0, 2), 1e-9).cols() == 2);
  CHECK(linalg::orth(CMatrix::Zero(3, 2), 1e-9).cols() == 0);
}

TEST_CASE("pseudo-inverse satisfies the Penrose identities") {
  random::Rng rng(5);
  const CMatrix m = random::gaussian(rng, 5, 2) * random::gaussian(rng, 2, 4);
  const CMatrix p = linalg::pinv(m, 1e-10);
  CHECK(oracle::norm(m * p * m - m) < 1e-10 * oracle::norm(m));
  CHECK(oracle::norm(p * m * p - p) < 1e-10 * oracle::norm(p));
  CHECK(oracle::norm((m * p).adjoint() - m * p) < 1e-10);
}

TEST_CASE("subspace distance") {
  const CMatrix e1 = mat({{1}, {0}, {0}});
  const CMatrix e12 = mat({{1, 0}, {0, 1}, {0, 0}});
  CHECK(linalg::subspace_distance(e1, 2.0 * e1, 1e-9) == doctest::Approx(0.0));
  CHECK(linalg::subspace_distance(e1, e12, 1e-9) == 1.0);
  CHECK(linalg::subspace_distance(e1, mat({{0}, {1}, {0}}), 1e-9) == doctest::Approx(1.0));
  CHECK(linalg::subspace_distance(CMatrix(3, 0), CMatrix(3, 0), 1e-9) == 0.0);
}

TEST_CASE("solve reports singular systems with the requested code") {
  const CMatrix s = mat({{1, 2}, {2, 4}});
  CHECK_THROWS_AS(linalg::solve(s, oracle::eye(2), 1e-13, ErrorCode::SchurSingular, "s"), Error);
  try {
    linalg::solve(s, oracle::eye(2), 1e-13, ErrorCode::SchurSingular, "s");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SchurSingular);
  }
  const CMatrix x = linalg::solve(mat({{2, 0}, {0, 4}}), mat({{2}, {2}}), 1e-13,
                                  ErrorCode::SingularValue, "d");
  CHECK(std::abs(x(1, 0) - 0.5) < 1e-15);
}

TEST_CASE("hermitian part and block helpers") {
  const CMatrix m = mat({{1, cplx(0, 1)}, {0, 2}});
  CHECK(oracle::norm(linalg::hermitian_part(m) - linalg::hermitian_part(m).adjoint()) == 0.0);
  CHECK(linalg::hermitian_defect(oracle::diag({1.0, 2.0})) == 0.0);
  const CMatrix b = linalg::block_diag(oracle::eye(1), oracle::diag({2.0, 3.0}));
  CHECK(b.rows() == 3);
  CHECK(b(2, 2) == cplx(3.0));
  CHECK(b(0, 1) == cplx(0.0));
  CHECK(linalg::vstack(oracle::eye(2), oracle::eye(2)).rows() == 4);
  CHECK(linalg::hstack(oracle::eye(2), oracle::eye(2)).cols() == 4);
}

TEST_CASE("staircase generalized kernel of nilpotent blocks") {
  // Jordan blocks of lengths 3 and 1 at zero.
  CMatrix n = CMatrix::Zero(4, 4);
  n(0, 1) = 1.0;
  n(1, 2) = 1.0;
  const linalg::Staircase s = linalg::generalized_kernel(n, 1e-9);
  REQUIRE(s.dims.size() == 3);
  CHECK(s.dims[0] == 2);
  CHECK(s.dims[1] == 3);
  CHECK(s.dims[2] == 4);
  CHECK(s.basis.cols() == 4);

  random::Rng rng(9);
  const CMatrix t = random::well_conditioned(rng, 4);
  const CMatrix similar = t.inverse() * n * t;
  const linalg::Staircase s2 = linalg::generalized_kernel(similar, 1e-9);
  CHECK(s2.dims.back() == 4);
  CHECK(s2.dims.front() == 2);

  const linalg::Staircase none = linalg::generalized_kernel(oracle::eye(3), 1e-9);
  CHECK(none.basis.cols() == 0);
}
