#include "pkit/random.hpp"

#include <algorithm>
#include <cmath>

#include "pkit/linalg.hpp"

namespace pkit::random {

namespace {

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

Index uniform_index(Rng& rng, Index lo, Index hi) {
  return std::uniform_int_distribution<Index>(lo, hi)(rng);
}

CMatrix unitary(Rng& rng, Index n) {
  Eigen::HouseholderQR<CMatrix> qr(gaussian(rng, n, n));
  return qr.householderQ() * CMatrix::Identity(n, n);
}

CMatrix signature(Index n, Index kappa) {
  CMatrix d = CMatrix::Identity(n, n);
  for (Index i = n - kappa; i < n; ++i) d(i, i) = -1.0;
  return d;
}

}  // namespace

CMatrix gaussian(Rng& rng, Index rows, Index cols) {
  std::normal_distribution<double> nd(0.0, 1.0);
  CMatrix m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) {
      const double re = nd(rng);
      const double im = nd(rng);
      m(i, j) = cplx(re, im);
    }
  return m;
}

CMatrix well_conditioned(Rng& rng, Index n) {
  const CMatrix u = unitary(rng, n);
  const CMatrix v = unitary(rng, n);
  RVector s(n);
  for (Index i = 0; i < n; ++i) s(i) = uniform(rng, 0.5, 2.0);
  return u * s.cast<cplx>().asDiagonal() * v.adjoint();
}

PontryaginSpace random_space(Rng& rng, Index n, Index kappa) {
  const CMatrix s = well_conditioned(rng, n);
  return PontryaginSpace(linalg::hermitian_part(s.adjoint() * signature(n, kappa) * s));
}

CMatrix random_selfadjoint(Rng& rng, const PontryaginSpace& space) {
  const Index n = space.dim();
  const CMatrix g = gaussian(rng, n, n);
  const CMatrix h = 0.5 * (g + g.adjoint());
  return space.gram_inverse() * h;
}

Realization random_realization(Rng& rng, Index n, Index kappa, Index m) {
  PontryaginSpace space = random_space(rng, n, kappa);
  CMatrix a = random_selfadjoint(rng, space);
  CMatrix g = gaussian(rng, n, m);
  return Realization::bounded(std::move(space), std::move(a), std::move(g));
}

Realization random_instance(Rng& rng, Index min_dim, Index max_dim) {
  const Index n = uniform_index(rng, min_dim, max_dim);
  const Index kappa = uniform_index(rng, 0, n);
  const Index m = uniform_index(rng, 1, n);
  return random_realization(rng, n, kappa, m);
}

InvariantInstance invariant_instance(Rng& rng, Index n, Index m) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "invariant_instance: need n >= 2");
  const Index d = uniform_index(rng, 1, n - 1);
  const Index k1 = uniform_index(rng, 0, d);
  const Index k2 = uniform_index(rng, 0, n - d);
  const PontryaginSpace s1(signature(d, k1)), s2(signature(n - d, k2));
  const CMatrix a1 = random_selfadjoint(rng, s1);
  const CMatrix a2 = random_selfadjoint(rng, s2);
  const CMatrix s = well_conditioned(rng, n);
  const CMatrix sinv = s.inverse();
  const CMatrix j = linalg::hermitian_part(s.adjoint() * linalg::block_diag(s1.gram(), s2.gram()) * s);
  const CMatrix a = sinv * linalg::block_diag(a1, a2) * s;
  PontryaginSpace space(j);
  CMatrix g = gaussian(rng, n, m);
  Realization r = Realization::bounded(space, a, std::move(g));
  Subspace sub(space, sinv.leftCols(d));
  return {std::move(r), std::move(sub), k1, k2};
}

PlantedJordan planted_jordan(Rng& rng, Index max_dim) {
  if (max_dim < 2) throw Error(ErrorCode::InvalidArgument, "planted_jordan: need max_dim >= 2");
  const double alpha = uniform(rng, -1.5, 1.5);
  auto sign = [&rng] { return std::bernoulli_distribution(0.5)(rng) ? 1 : -1; };

  std::vector<JordanBlockSpec> blocks;
  Index used = uniform_index(rng, 2, std::min<Index>(3, max_dim));
  blocks.push_back({used, sign()});
  for (int extra = 0; extra < 2 && used < max_dim; ++extra) {
    if (!std::bernoulli_distribution(0.5)(rng)) continue;
    const Index l = uniform_index(rng, 1, std::min<Index>(3, max_dim - used));
    blocks.push_back({l, sign()});
    used += l;
  }
  const bool pair = max_dim - used >= 2 && std::bernoulli_distribution(0.3)(rng);
  const Index simple = uniform_index(rng, 0, max_dim - used - (pair ? 2 : 0));
  const Index n = used + simple + (pair ? 2 : 0);

  CMatrix jc = CMatrix::Zero(n, n), ac = CMatrix::Zero(n, n);
  Index kappa = 0, at = 0;
  for (const auto& b : blocks) {
    for (Index i = 0; i < b.length; ++i) {
      ac(at + i, at + i) = alpha;
      if (i + 1 < b.length) ac(at + i, at + i + 1) = 1.0;
      jc(at + i, at + b.length - 1 - i) = static_cast<double>(b.sign);
    }
    kappa += b.sign > 0 ? b.length / 2 : (b.length + 1) / 2;
    at += b.length;
  }
  for (Index i = 0; i < simple; ++i, ++at) {
    double mu = alpha;
    while (std::abs(mu - alpha) < 0.3) mu = uniform(rng, -3.0, 3.0);
    const int s = sign();
    ac(at, at) = mu;
    jc(at, at) = static_cast<double>(s);
    if (s < 0) ++kappa;
  }
  if (pair) {
    const cplx lambda(uniform(rng, -2.0, 2.0), uniform(rng, 0.3, 1.5));
    ac(at, at) = lambda;
    ac(at + 1, at + 1) = std::conj(lambda);
    jc(at, at + 1) = 1.0;
    jc(at + 1, at) = 1.0;
    ++kappa;
    at += 2;
  }

  const CMatrix s = well_conditioned(rng, n);
  const CMatrix sinv = s.inverse();
  const CMatrix j = linalg::hermitian_part(s.adjoint() * jc * s);
  const CMatrix a = sinv * ac * s;
  // Column 0 only reaches the first block, so the eigenvalues away from alpha
  // need at least one random column besides those covering the other blocks.
  const Index extra = (simple > 0 || pair) ? 1 : uniform_index(rng, 0, 1);
  const Index m = std::min<Index>(n, static_cast<Index>(blocks.size()) + extra);
  CMatrix g = gaussian(rng, n, m);
  const Index l0 = blocks.front().length;
  g.col(0) = sinv.col(l0 - 1);

  JordanChain chain;
  chain.alpha = alpha;
  chain.vectors = sinv.leftCols(l0);
  PlantedJordan out{Realization::bounded(PontryaginSpace(j), a, std::move(g)), alpha,
                    std::move(blocks), kappa, std::move(chain)};
  return out;
}

}  // namespace pkit::random
