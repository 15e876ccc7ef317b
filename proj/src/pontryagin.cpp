#include "pkit/pontryagin.hpp"

#include <algorithm>
#include <cmath>

#include "pkit/linalg.hpp"

namespace pkit {

Inertia hermitian_inertia(const CMatrix& m, double tol, double scale) {
  if (m.rows() != m.cols())
    throw Error(ErrorCode::DimensionMismatch, "hermitian_inertia: matrix is not square");
  if (m.size() == 0) return {};
  if (linalg::hermitian_defect(m) > tol)
    throw Error(ErrorCode::NotHermitian, "hermitian_inertia: matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(linalg::hermitian_part(m),
                                             Eigen::EigenvaluesOnly);
  const RVector& ev = eig.eigenvalues();
  const double top = ev.cwiseAbs().maxCoeff();
  const double cut = tol * std::max(top, scale);
  Inertia out;
  for (Index i = 0; i < ev.size(); ++i) {
    if (ev(i) > cut)
      ++out.plus;
    else if (ev(i) < -cut)
      ++out.minus;
    else
      ++out.zero;
  }
  return out;
}

PontryaginSpace::PontryaginSpace(CMatrix gram, const Tolerances& tol) {
  if (gram.rows() != gram.cols())
    throw Error(ErrorCode::DimensionMismatch, "Gram matrix must be square");
  if (!gram.allFinite())
    throw Error(ErrorCode::InvalidArgument, "Gram matrix has non-finite entries");
  if (linalg::hermitian_defect(gram) > tol.rank)
    throw Error(ErrorCode::NotHermitian, "Gram matrix is not Hermitian");
  gram_ = linalg::hermitian_part(gram);
  if (gram_.size() == 0) return;
  const RVector s = linalg::singular_values(gram_);
  if (!(s(s.size() - 1) > tol.rank * s(0)))
    throw Error(ErrorCode::InvalidArgument, "Gram matrix is singular");
  gram_norm_ = s(0);
  gram_inv_ = linalg::hermitian_part(gram_.inverse());
  inertia_ = hermitian_inertia(gram_, tol.rank);
}

PontryaginSpace PontryaginSpace::hilbert(Index n) {
  return PontryaginSpace(linalg::identity(n));
}

cplx PontryaginSpace::inner(const CVector& x, const CVector& y) const {
  return y.dot(gram_ * x);
}

PontryaginSpace direct_sum(const PontryaginSpace& a, const PontryaginSpace& b) {
  if (a.dim() == 0) return b;
  if (b.dim() == 0) return a;
  return PontryaginSpace(linalg::block_diag(a.gram(), b.gram()));
}

SignatureBasis signature_basis(const PontryaginSpace& space) {
  SignatureBasis out{CMatrix(space.dim(), space.dim()), RVector(space.dim())};
  if (space.dim() == 0) return out;
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(space.gram());
  const RVector& ev = eig.eigenvalues();
  for (Index i = 0; i < ev.size(); ++i) {
    out.basis.col(i) = eig.eigenvectors().col(i) / std::sqrt(std::abs(ev(i)));
    out.signs(i) = ev(i) > 0 ? 1.0 : -1.0;
  }
  return out;
}

CMatrix j_adjoint(const CMatrix& t, const PontryaginSpace& space) {
  return j_adjoint(t, space, space);
}

CMatrix j_adjoint(const CMatrix& t, const PontryaginSpace& from,
                  const PontryaginSpace& to) {
  if (t.cols() != from.dim() || t.rows() != to.dim())
    throw Error(ErrorCode::DimensionMismatch, "j_adjoint: operator does not match spaces");
  return from.gram_inverse() * t.adjoint() * to.gram();
}

CMatrix gamma_plus(const CMatrix& gamma, const PontryaginSpace& space) {
  if (gamma.rows() != space.dim())
    throw Error(ErrorCode::DimensionMismatch, "gamma_plus: row count differs from space dimension");
  return gamma.adjoint() * space.gram();
}

bool is_selfadjoint(const CMatrix& t, const PontryaginSpace& space, double tol) {
  if (t.rows() != space.dim() || t.cols() != space.dim())
    throw Error(ErrorCode::DimensionMismatch, "is_selfadjoint: operator does not match space");
  if (t.size() == 0) return true;
  const CMatrix jt = space.gram() * t;
  const double scale = linalg::norm2(jt);
  return linalg::norm2(jt - jt.adjoint()) <= tol * scale;
}

Subspace::Subspace(PontryaginSpace ambient, CMatrix basis, const Tolerances& tol)
    : ambient_(std::move(ambient)), basis_(std::move(basis)) {
  if (basis_.rows() != ambient_.dim())
    throw Error(ErrorCode::DimensionMismatch, "Subspace: basis rows differ from ambient dimension");
  if (linalg::rank(basis_, tol.rank) != basis_.cols())
    throw Error(ErrorCode::InvalidArgument, "Subspace: basis columns are linearly dependent");
}

Subspace Subspace::zero(PontryaginSpace ambient) {
  const Index n = ambient.dim();
  return Subspace(std::move(ambient), CMatrix(n, 0));
}

CMatrix subspace_gram(const Subspace& s) {
  return s.basis().adjoint() * s.ambient().gram() * s.basis();
}

namespace {

CMatrix orthonormal_gram(const Subspace& s, CMatrix& q) {
  q = linalg::orth(s.basis(), 1e-14);
  return linalg::hermitian_part(q.adjoint() * s.ambient().gram() * q);
}

}  // namespace

bool is_nondegenerate(const Subspace& s, double tol) {
  if (s.dim() == 0) return true;
  CMatrix q;
  const CMatrix g = orthonormal_gram(s, q);
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(g, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().cwiseAbs().minCoeff() > tol * s.ambient().gram_norm();
}

Inertia subspace_inertia(const Subspace& s, double tol) {
  if (s.dim() == 0) return {};
  CMatrix q;
  const CMatrix g = orthonormal_gram(s, q);
  return hermitian_inertia(g, tol, s.ambient().gram_norm());
}

CMatrix orthogonal_projection(const Subspace& s, double tol) {
  const Index n = s.ambient().dim();
  if (s.dim() == 0) return CMatrix::Zero(n, n);
  if (!is_nondegenerate(s, tol))
    throw Error(ErrorCode::DegenerateSubspace,
                "orthogonal_projection: inner product degenerates on the subspace");
  CMatrix q;
  const CMatrix g = orthonormal_gram(s, q);
  return q * g.inverse() * q.adjoint() * s.ambient().gram();
}

Subspace orthogonal_complement(const Subspace& s, double tol) {
  const CMatrix lhs = s.basis().adjoint() * s.ambient().gram();
  return Subspace(s.ambient(), linalg::null_space(lhs, tol));
}

Compression compress(const Subspace& s, const Tolerances& tol) {
  if (!is_nondegenerate(s, tol.rank))
    throw Error(ErrorCode::DegenerateSubspace, "compress: subspace is degenerate");
  CMatrix q;
  const CMatrix g = orthonormal_gram(s, q);
  if (q.cols() == 0) return {q, PontryaginSpace()};
  return {q, PontryaginSpace(g, tol)};
}

}  // namespace pkit
