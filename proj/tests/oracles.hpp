#pragma once

// Independent reference computations for the tests. They use only Eigen
// directly (dense inverses, full-pivot LU ranks, Hermitian eigenvalues, QR)
// and never call into the library's own numerical routines.

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <vector>

#include <Eigen/Dense>

#include "pkit/core.hpp"

namespace oracle {

using pkit::CMatrix;
using pkit::CVector;
using pkit::cplx;
using pkit::Index;

inline CMatrix mat(std::initializer_list<std::initializer_list<cplx>> rows) {
  const Index r = static_cast<Index>(rows.size());
  const Index c = r ? static_cast<Index>(rows.begin()->size()) : 0;
  CMatrix m(r, c);
  Index i = 0;
  for (const auto& row : rows) {
    Index j = 0;
    for (const cplx v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

inline CMatrix eye(Index n) { return CMatrix::Identity(n, n); }

inline CMatrix diag(std::initializer_list<cplx> d) {
  CMatrix m = CMatrix::Zero(static_cast<Index>(d.size()), static_cast<Index>(d.size()));
  Index i = 0;
  for (const cplx v : d) m(i, i) = v, ++i;
  return m;
}

/// Spectral norm through the largest eigenvalue of M^* M.
inline double norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  const Eigen::SelfAdjointEigenSolver<CMatrix> es(m.adjoint() * m, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

inline double rel_error(const CMatrix& got, const CMatrix& want) {
  return norm(got - want) / std::max(1.0, norm(want));
}

/// Q(z) = Gamma0^* J (A - z)^{-1} Gamma0 by a dense inverse.
inline CMatrix dense_q(const CMatrix& j, const CMatrix& a, const CMatrix& g, cplx z) {
  const CMatrix inv = (a - z * eye(a.rows())).fullPivLu().inverse();
  return g.adjoint() * j * inv * g;
}

inline Index lu_rank(const CMatrix& m, double tol = 1e-9) {
  if (m.size() == 0) return 0;
  Eigen::FullPivLU<CMatrix> lu(m);
  lu.setThreshold(tol);
  return lu.rank();
}

/// Left singular vectors of m whose singular values exceed cut.
inline CMatrix column_space(const CMatrix& m, double cut) {
  if (m.cols() == 0) return CMatrix(m.rows(), 0);
  const Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeThinU);
  Index r = 0;
  while (r < svd.singularValues().size() && svd.singularValues()(r) > cut) ++r;
  return svd.matrixU().leftCols(r);
}

/// Orthonormal basis of span{A^k Gamma0 : k < n}: each new block A q is
/// orthogonalized twice against the basis so far and truncated by SVD with an
/// absolute cutoff, so growth of A^k never hides directions.
inline CMatrix krylov_basis(const CMatrix& a, const CMatrix& g, double tol = 1e-9) {
  const Index n = a.rows();
  if (g.cols() == 0 || n == 0) return CMatrix(n, 0);
  const double gs = std::max(1.0, g.cwiseAbs().maxCoeff());
  CMatrix basis = column_space(g / gs, tol);
  CMatrix last = basis;
  const double as = std::max(1.0, a.cwiseAbs().maxCoeff());
  for (Index k = 1; k < n && basis.cols() < n && last.cols() > 0; ++k) {
    CMatrix w = a * last / as;
    for (int pass = 0; pass < 2; ++pass) w -= basis * (basis.adjoint() * w);
    last = column_space(w, tol);
    if (last.cols() == 0) break;
    CMatrix next(n, basis.cols() + last.cols());
    next << basis, last;
    basis = next;
  }
  return basis;
}

/// Sign counts of a Hermitian matrix: {plus, zero, minus}.
struct Signs {
  Index plus = 0, zero = 0, minus = 0;
};

inline Signs inertia(const CMatrix& h, double tol = 1e-9) {
  Signs s;
  if (h.size() == 0) return s;
  const CMatrix herm = 0.5 * (h + h.adjoint());
  const Eigen::SelfAdjointEigenSolver<CMatrix> es(herm, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  const double cut = tol * std::max(1.0, ev.cwiseAbs().maxCoeff());
  for (Index i = 0; i < ev.size(); ++i) {
    if (ev(i) > cut)
      ++s.plus;
    else if (ev(i) < -cut)
      ++s.minus;
    else
      ++s.zero;
  }
  return s;
}

/// Negative index of a bounded-form realization: negative eigenvalues of the
/// Gram matrix restricted to the Krylov space of (A, Gamma0).
inline Index krylov_kappa(const CMatrix& j, const CMatrix& a, const CMatrix& g) {
  const CMatrix b = krylov_basis(a, g);
  return inertia(b.adjoint() * j * b).minus;
}

/// Negative squares of the Nevanlinna kernel of a matrix function on a fixed
/// deterministic grid of upper-half-plane points (block Pick matrix).
template <class F>
Index pick_negative_squares(F&& q, Index m, int points = 24) {
  std::vector<cplx> zs;
  for (int k = 0; k < points; ++k)
    zs.emplace_back(-2.5 + 5.0 * k / (points - 1), 0.2 + 2.3 * ((k * 7) % points) / points);
  std::vector<CMatrix> vals;
  for (const cplx z : zs) vals.push_back(q(z));
  const Index p = static_cast<Index>(zs.size());
  CMatrix pick(p * m, p * m);
  for (Index a = 0; a < p; ++a)
    for (Index b = 0; b < p; ++b)
      pick.block(a * m, b * m, m, m) =
          (vals[a] - vals[b].adjoint()) / (zs[a] - std::conj(zs[b]));
  return inertia(pick, 1e-9).minus;
}

/// Distance between the Euclidean projectors onto the column spaces of a
/// and b, both assumed of full column rank; QR-based.
inline double projector_distance(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.cols()) return 1.0;
  if (a.cols() == 0) return 0.0;
  const Index n = a.rows();
  Eigen::HouseholderQR<CMatrix> qa(a), qb(b);
  const CMatrix ua = qa.householderQ() * CMatrix::Identity(n, a.cols());
  const CMatrix ub = qb.householderQ() * CMatrix::Identity(n, b.cols());
  return norm(ua * ua.adjoint() - ub * ub.adjoint());
}

/// True when the columns of `sub` lie in the column space of `space`.
inline bool contained(const CMatrix& sub, const CMatrix& space, double tol = 1e-8) {
  if (sub.cols() == 0) return true;
  CMatrix s(space.rows(), space.cols() + sub.cols());
  s << space, sub;
  return lu_rank(s, tol) == lu_rank(space, tol);
}

}  // namespace oracle
