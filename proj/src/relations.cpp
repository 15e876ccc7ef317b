#include "pkit/relations.hpp"

#include "pkit/linalg.hpp"

namespace pkit {

LinearRelation::LinearRelation(PontryaginSpace space, CMatrix m, CMatrix n,
                               const Tolerances& tol)
    : space_(std::move(space)), m_(std::move(m)), n_(std::move(n)) {
  if (m_.rows() != space_.dim() || n_.rows() != space_.dim())
    throw Error(ErrorCode::DimensionMismatch, "LinearRelation: generator rows differ from space dimension");
  if (m_.cols() != n_.cols())
    throw Error(ErrorCode::DimensionMismatch, "LinearRelation: generator pairs have different column counts");
  if (m_.cols() == 0) return;
  const CMatrix s = stacked();
  if (linalg::rank(s, tol.rank) < s.cols()) {
    const CMatrix q = linalg::orth(s, tol.rank);
    m_ = q.topRows(space_.dim());
    n_ = q.bottomRows(space_.dim());
  }
}

CMatrix LinearRelation::stacked() const { return linalg::vstack(m_, n_); }

LinearRelation from_operator(const CMatrix& t, const PontryaginSpace& space) {
  if (t.rows() != space.dim() || t.cols() != space.dim())
    throw Error(ErrorCode::DimensionMismatch, "from_operator: operator does not match space");
  return LinearRelation(space, linalg::identity(space.dim()), t);
}

LinearRelation adjoint_relation(const LinearRelation& r, const Tolerances& tol) {
  const CMatrix& j = r.space().gram();
  const CMatrix lhs =
      linalg::hstack(-r.value_part().adjoint() * j, r.domain_part().adjoint() * j);
  const Index n = r.dim();
  if (lhs.rows() == 0)
    return LinearRelation(r.space(), linalg::hstack(linalg::identity(n), CMatrix::Zero(n, n)),
                          linalg::hstack(CMatrix::Zero(n, n), linalg::identity(n)), tol);
  const CMatrix basis = linalg::null_space(lhs, tol.rank);
  return LinearRelation(r.space(), basis.topRows(n), basis.bottomRows(n), tol);
}

bool same_relation(const LinearRelation& a, const LinearRelation& b, const Tolerances& tol) {
  if (a.dim() != b.dim()) return false;
  return linalg::subspace_distance(a.stacked(), b.stacked(), tol.rank) <= tol.subspace;
}

bool is_selfadjoint_relation(const LinearRelation& r, const Tolerances& tol) {
  return same_relation(r, adjoint_relation(r, tol), tol);
}

Subspace multivalued_part(const LinearRelation& r, const Tolerances& tol) {
  if (r.generators() == 0) return Subspace::zero(r.space());
  const double scale = linalg::norm2(r.stacked());
  const CMatrix kernel = linalg::null_space(r.domain_part(), tol.rank, scale);
  if (kernel.cols() == 0) return Subspace::zero(r.space());
  return Subspace(r.space(), linalg::orth(r.value_part() * kernel, tol.rank, scale));
}

CMatrix resolvent(const LinearRelation& r, cplx z, const Tolerances& tol) {
  const Index n = r.dim();
  if (n == 0) return CMatrix(0, 0);
  const CMatrix d = r.value_part() - z * r.domain_part();
  if (d.cols() < n)
    throw Error(ErrorCode::NotInResolventSet, "resolvent: relation is not onto at z");
  Eigen::JacobiSVD<CMatrix> svd(d, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RVector& s = svd.singularValues();
  if (!(s(n - 1) > tol.singular * s(0)))
    throw Error(ErrorCode::NotInResolventSet, "resolvent: z is not in the resolvent set");
  const CMatrix& v = svd.matrixV();
  if (d.cols() > n) {
    const CMatrix stray = r.domain_part() * v.rightCols(d.cols() - n);
    if (linalg::norm2(stray) > tol.rank * linalg::norm2(r.stacked()))
      throw Error(ErrorCode::NotInResolventSet, "resolvent: z is an eigenvalue of the relation");
  }
  const RVector inv_s = s.head(n).cwiseInverse();
  return r.domain_part() * v.leftCols(n) * inv_s.asDiagonal() *
         svd.matrixU().leftCols(n).adjoint();
}

bool in_resolvent_set(const LinearRelation& r, cplx z, const Tolerances& tol) {
  try {
    resolvent(r, z, tol);
    return true;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NotInResolventSet) return false;
    throw;
  }
}

LinearRelation relation_direct_sum(const LinearRelation& a, const LinearRelation& b) {
  if (a.dim() == 0) return b;
  if (b.dim() == 0) return a;
  return LinearRelation(direct_sum(a.space(), b.space()),
                        linalg::block_diag(a.domain_part(), b.domain_part()),
                        linalg::block_diag(a.value_part(), b.value_part()));
}

LinearRelation from_resolvent(const CMatrix& t, cplx z0, const PontryaginSpace& space) {
  if (t.rows() != space.dim() || t.cols() != space.dim())
    throw Error(ErrorCode::DimensionMismatch, "from_resolvent: operator does not match space");
  return LinearRelation(space, t, linalg::identity(space.dim()) + z0 * t);
}

bool is_operator_graph(const LinearRelation& r, CMatrix* op, const Tolerances& tol) {
  const Index n = r.dim();
  if (multivalued_part(r, tol).dim() != 0) return false;
  if (r.generators() != n) return false;
  if (n == 0) {
    if (op) *op = CMatrix(0, 0);
    return true;
  }
  const double scale = linalg::norm2(r.stacked());
  if (linalg::rank(r.domain_part(), tol.rank, scale) != n) return false;
  if (op) *op = r.value_part() * r.domain_part().inverse();
  return true;
}

}  // namespace pkit
