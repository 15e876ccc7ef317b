#include "pkit/linalg.hpp"

#include <algorithm>
#include <cstdlib>
#include <iomanip>
#include <sstream>
#include <string>

namespace pkit {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::DegenerateSubspace: return "DegenerateSubspace";
    case ErrorCode::DegenerateMinimalSubspace: return "DegenerateMinimalSubspace";
    case ErrorCode::NotInResolventSet: return "NotInResolventSet";
    case ErrorCode::SingularValue: return "SingularValue";
    case ErrorCode::GramProductSingular: return "GramProductSingular";
    case ErrorCode::SchurSingular: return "SchurSingular";
    case ErrorCode::NotInvariant: return "NotInvariant";
    case ErrorCode::NotMinimal: return "NotMinimal";
    case ErrorCode::NotEigenvalue: return "NotEigenvalue";
    case ErrorCode::ProjectorNotJSymmetric: return "ProjectorNotJSymmetric";
    case ErrorCode::NoGenerator: return "NoGenerator";
    case ErrorCode::Parse: return "Parse";
  }
  return "Unknown";
}

Tolerances Tolerances::from_env() {
  Tolerances tol;
  if (const char* env = std::getenv("PKIT_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && v > 0.0) tol.rank = v;
  }
  return tol;
}

namespace linalg {

namespace {

// Full SVD is only used for null spaces; everything else needs thin factors.
Eigen::JacobiSVD<CMatrix> svd(const CMatrix& m, unsigned options) {
  return Eigen::JacobiSVD<CMatrix>(m, options);
}

double cutoff(const RVector& s, double tol, double scale) {
  const double top = s.size() > 0 ? s(0) : 0.0;
  return tol * std::max(top, scale);
}

}  // namespace

double norm2(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  return svd(m, 0).singularValues()(0);
}

RVector singular_values(const CMatrix& m) {
  if (m.size() == 0) return RVector(0);
  return svd(m, 0).singularValues();
}

Index rank(const CMatrix& m, double tol, double scale) {
  if (m.size() == 0) return 0;
  const RVector s = singular_values(m);
  const double c = cutoff(s, tol, scale);
  Index r = 0;
  for (Index i = 0; i < s.size(); ++i)
    if (s(i) > c) ++r;
  return r;
}

CMatrix orth(const CMatrix& m, double tol, double scale) {
  if (m.size() == 0) return CMatrix(m.rows(), 0);
  auto dec = svd(m, Eigen::ComputeThinU);
  const RVector& s = dec.singularValues();
  const double c = cutoff(s, tol, scale);
  Index r = 0;
  while (r < s.size() && s(r) > c) ++r;
  return dec.matrixU().leftCols(r);
}

CMatrix null_space(const CMatrix& m, double tol, double scale) {
  const Index n = m.cols();
  if (n == 0) return CMatrix(0, 0);
  if (m.rows() == 0) return identity(n);
  auto dec = svd(m, Eigen::ComputeFullV);
  const RVector& s = dec.singularValues();
  const double c = cutoff(s, tol, scale);
  Index r = 0;
  while (r < s.size() && s(r) > c) ++r;
  return dec.matrixV().rightCols(n - r);
}

CMatrix pinv(const CMatrix& m, double tol) {
  if (m.size() == 0) return CMatrix::Zero(m.cols(), m.rows());
  auto dec = svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RVector& s = dec.singularValues();
  const double c = cutoff(s, tol, 0.0);
  CMatrix out = CMatrix::Zero(m.cols(), m.rows());
  for (Index i = 0; i < s.size(); ++i) {
    if (s(i) <= c) break;
    out += dec.matrixV().col(i) * (1.0 / s(i)) * dec.matrixU().col(i).adjoint();
  }
  return out;
}

CMatrix range_projector(const CMatrix& basis, double tol) {
  const CMatrix q = orth(basis, tol);
  return q * q.adjoint();
}

double subspace_distance(const CMatrix& a, const CMatrix& b, double tol) {
  const CMatrix qa = orth(a, tol);
  const CMatrix qb = orth(b, tol);
  if (qa.cols() != qb.cols()) return 1.0;
  if (qa.cols() == 0) return 0.0;
  return norm2(qa * qa.adjoint() - qb * qb.adjoint());
}

CMatrix solve(const CMatrix& m, const CMatrix& rhs, double rcond_min,
              ErrorCode code, std::string_view what) {
  if (m.rows() != m.cols() || m.rows() != rhs.rows())
    throw Error(ErrorCode::DimensionMismatch,
                "solve: incompatible dimensions for " + std::string(what));
  if (m.rows() == 0) return CMatrix(0, rhs.cols());
  Eigen::PartialPivLU<CMatrix> lu(m);
  const double rc = lu.rcond();
  if (!(rc > rcond_min)) {
    std::ostringstream msg;
    msg << what << " is singular (rcond " << std::scientific << std::setprecision(3) << rc << ")";
    throw Error(code, msg.str());
  }
  return lu.solve(rhs);
}

CMatrix inverse(const CMatrix& m, double rcond_min, ErrorCode code,
                std::string_view what) {
  return solve(m, identity(m.rows()), rcond_min, code, what);
}

double hermitian_defect(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  const double n = m.norm();
  if (n == 0.0) return 0.0;
  return (m - m.adjoint()).norm() / n;
}

CMatrix hermitian_part(const CMatrix& m) { return 0.5 * (m + m.adjoint()); }

CMatrix block_diag(const CMatrix& a, const CMatrix& b) {
  CMatrix out = CMatrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

CMatrix vstack(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.cols())
    throw Error(ErrorCode::DimensionMismatch, "vstack: column counts differ");
  CMatrix out(a.rows() + b.rows(), a.cols());
  out.topRows(a.rows()) = a;
  out.bottomRows(b.rows()) = b;
  return out;
}

CMatrix hstack(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows())
    throw Error(ErrorCode::DimensionMismatch, "hstack: row counts differ");
  CMatrix out(a.rows(), a.cols() + b.cols());
  out.leftCols(a.cols()) = a;
  out.rightCols(b.cols()) = b;
  return out;
}

CMatrix identity(Index n) { return CMatrix::Identity(n, n); }

Staircase generalized_kernel(const CMatrix& m, double tol, double scale) {
  const Index n = m.rows();
  const double s = std::max(norm2(m), scale);
  Staircase out;
  out.basis = CMatrix(n, 0);
  while (out.basis.cols() < n) {
    const CMatrix residual = (identity(n) - out.basis * out.basis.adjoint()) * m;
    CMatrix next = null_space(residual, tol, s);
    if (next.cols() <= out.basis.cols()) break;
    out.basis = std::move(next);
    out.dims.push_back(out.basis.cols());
  }
  return out;
}

}  // namespace linalg
}  // namespace pkit
