#include "pkit/inversion.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include "pkit/linalg.hpp"

namespace pkit {

InversionContext build_context(const Realization& r, const Tolerances& tol) {
  if (r.form() != Form::Bounded)
    throw Error(ErrorCode::InvalidArgument, "build_context: realization must be in bounded form");
  const Index n = r.dim();
  const Index m = r.coeff_dim();
  const CMatrix gp = r.gamma_plus();
  const CMatrix& a = r.op_matrix();

  InversionContext ctx(r);
  ctx.gram_ = linalg::hermitian_part(gp * r.gamma());
  if (m > 0) {
    const RVector s = linalg::singular_values(ctx.gram_);
    const double gn = linalg::norm2(r.gamma());
    const double scale = std::max(s(0), gn * gn * r.space().gram_norm());
    if (!(s(m - 1) > tol.rank * scale)) {
      std::ostringstream msg;
      msg << "Gamma0^+ Gamma0 is singular (smallest singular value " << s(m - 1) << ")";
      throw Error(ErrorCode::GramProductSingular, msg.str());
    }
  }
  ctx.gram_inv_ = linalg::hermitian_part(ctx.gram_.inverse());
  ctx.p_ = r.gamma() * ctx.gram_inv_ * gp;
  ctx.range_ = linalg::orth(r.gamma(), 1e-14);

  // ker Gamma0^+ has dimension exactly n - m once G is invertible.
  if (m == 0) {
    ctx.comp_ = linalg::identity(n);
  } else if (n == m) {
    ctx.comp_ = CMatrix(n, 0);
  } else {
    Eigen::JacobiSVD<CMatrix> svd(gp, Eigen::ComputeFullV);
    ctx.comp_ = svd.matrixV().rightCols(n - m);
  }
  // C^* (I - P) = (C^* J C)^{-1} C^* J. Forming it this way avoids the
  // cancellation in I - P when G is ill-conditioned, and symmetrizing
  // C^* J A C keeps A~ exactly self-adjoint for the compressed Gram matrix.
  if (ctx.comp_.cols() > 0) {
    const CMatrix& c = ctx.comp_;
    ctx.cj_ = c.adjoint() * r.space().gram();
    ctx.pencil_m_ = linalg::hermitian_part(ctx.cj_ * c);
    ctx.pencil_a_ = linalg::hermitian_part(ctx.cj_ * a * c);
    const Eigen::PartialPivLU<CMatrix> lu(ctx.pencil_m_);
    ctx.cleft_ = lu.solve(ctx.cj_);
    ctx.atilde_c_ = lu.solve(ctx.pencil_a_);
  } else {
    ctx.cj_ = CMatrix(0, n);
    ctx.pencil_m_ = ctx.pencil_a_ = CMatrix(0, 0);
    ctx.cleft_ = CMatrix(0, n);
    ctx.atilde_c_ = CMatrix(0, 0);
  }
  ctx.atilde_ = ctx.comp_ * ctx.atilde_c_ * ctx.cleft_;
  return ctx;
}

CMatrix InversionContext::compressed_resolvent(cplx z, const Tolerances& tol) const {
  const Index n = base_.dim();
  const Index d = comp_.cols();
  if (d == 0) return CMatrix::Zero(n, n);
  // The pencil form never inverts C^* J C, which is ill-conditioned when
  // range(I - P) is close to degenerate.
  return comp_ * linalg::solve(pencil_a_ - z * pencil_m_, cj_, tol.singular,
                               ErrorCode::NotInResolventSet, "A~ - z on (I - P)K");
}

namespace {

void require_resolvent_point(const Realization& r, cplx z, const Tolerances& tol) {
  const Index n = r.dim();
  if (n == 0) return;
  Eigen::PartialPivLU<CMatrix> lu(r.op_matrix() - z * linalg::identity(n));
  if (!(lu.rcond() > tol.singular))
    throw Error(ErrorCode::NotInResolventSet, "z is an eigenvalue of A");
}

}  // namespace

CMatrix qhat_evaluate(const InversionContext& ctx, cplx z, const Tolerances& tol) {
  const Realization& r = ctx.base();
  require_resolvent_point(r, z, tol);
  const Index n = r.dim();
  const CMatrix& a = r.op_matrix();
  const CMatrix rt = ctx.compressed_resolvent(z, tol);
  const CMatrix mid = a * rt * a - (a - z * linalg::identity(n));
  // G^{-1} X G^{-1} through one factorization of the Hermitian G.
  const Eigen::PartialPivLU<CMatrix> lu(ctx.gram_product());
  const CMatrix left = lu.solve(r.gamma_plus() * mid * r.gamma());
  return lu.solve(left.adjoint()).adjoint();
}

CMatrix schur_evaluate(const InversionContext& ctx, cplx z, const Tolerances& tol) {
  const Realization& r = ctx.base();
  require_resolvent_point(r, z, tol);
  const Index n = r.dim();
  const CMatrix& a = r.op_matrix();
  const CMatrix gp = r.gamma_plus();
  const CMatrix& g = ctx.gram_product();
  const CMatrix rt = ctx.compressed_resolvent(z, tol);
  // Columns of Gamma0 are a basis of range(P) in which P X has coordinates
  // G^{-1} Gamma0^+ X, so the Schur complement there is G^{-1} phi and
  // Gamma0^+ (Schur)^{-1} Gamma0 = G phi^{-1} G.
  const CMatrix phi = gp * (a - z * linalg::identity(n)) * r.gamma() - gp * a * rt * a * r.gamma();
  return g * linalg::solve(phi, g, tol.singular, ErrorCode::SchurSingular,
                           "Schur complement on range(P)");
}

CMatrix qhat_gamma_plus(const InversionContext& ctx, cplx z, const Tolerances& tol) {
  const Realization& r = ctx.base();
  require_resolvent_point(r, z, tol);
  const Index n = r.dim();
  const CMatrix& a = r.op_matrix();
  const CMatrix id = linalg::identity(n);
  const CMatrix rt = ctx.compressed_resolvent(z, tol);
  return ctx.gram_product_inverse() * r.gamma_plus() * (-id + a * rt) * (a - z * id);
}

CMatrix gamma_at(const Realization& r, cplx z, const Tolerances& tol) {
  if (r.form() != Form::General)
    throw Error(ErrorCode::InvalidArgument, "gamma_at: realization must be in general form");
  return r.gamma() + (z - r.ref_point()) * (resolvent(r.op(), z, tol) * r.gamma());
}

Realization inverse_realization(const Realization& r, cplx z0, const Tolerances& tol) {
  Realization g = r.form() == Form::Bounded ? to_general(r, z0, tol) : r;
  if (g.ref_point() != z0)
    throw Error(ErrorCode::InvalidArgument,
                "inverse_realization: z0 differs from the realization's reference point");
  const CMatrix q0 = evaluate(g, z0, tol);
  const CMatrix q0_inv =
      linalg::inverse(q0, tol.singular, ErrorCode::SingularValue, "Q(z0)");
  const CMatrix qc_inv =
      linalg::inverse(evaluate(g, std::conj(z0), tol), tol.singular, ErrorCode::SingularValue,
                      "Q(conj z0)");
  const CMatrix r0 = resolvent(g.op(), z0, tol);
  const CMatrix gc_plus = gamma_plus(gamma_at(g, std::conj(z0), tol), g.space());
  const CMatrix t = r0 - g.gamma() * q0_inv * gc_plus;
  LinearRelation ahat = from_resolvent(t, z0, g.space());
  CMatrix gamma_hat = -g.gamma() * q0_inv;
  return Realization::general(g.space(), std::move(ahat), std::move(gamma_hat), z0, -qc_inv,
                              tol);
}

cplx pick_reference_point(const Realization& r, const Tolerances& tol) {
  static constexpr std::array<cplx, 8> candidates{
      cplx{0.0, 1.0},  cplx{0.0, 2.0},  cplx{0.5, 1.5},  cplx{-0.7, 0.8},
      cplx{1.3, 2.2},  cplx{0.0, 3.0},  cplx{-1.9, 1.1}, cplx{2.4, 0.6}};
  cplx best = candidates[0];
  double best_rc = -1.0;
  for (const cplx z : candidates) {
    try {
      const CMatrix q = evaluate(r, z, tol);
      evaluate(r, std::conj(z), tol);
      if (q.size() == 0) return z;
      Eigen::PartialPivLU<CMatrix> lu(q);
      const double rc = lu.rcond();
      if (rc > 1e-6) return z;
      if (rc > best_rc) {
        best_rc = rc;
        best = z;
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NotInResolventSet) throw;
    }
  }
  return best;
}

MultivaluedPartReport verify_multivalued_part(const Realization& r, std::optional<cplx> z0,
                                              const Tolerances& tol) {
  const InversionContext ctx = build_context(r, tol);
  MultivaluedPartReport rep;
  rep.z0 = z0 ? *z0 : pick_reference_point(r, tol);
  const Realization inv = inverse_realization(r, rep.z0, tol);
  const Subspace mul = multivalued_part(inv.op(), tol);
  const CMatrix& gamma0 = ctx.base().gamma();
  rep.multivalued_dim = mul.dim();
  rep.range_dim = ctx.range_basis().cols();
  rep.distance = linalg::subspace_distance(mul.basis(), gamma0, tol.rank);
  const CMatrix t = resolvent(inv.op(), rep.z0, tol);
  // T can vanish up to rounding; measure it against the base resolvent.
  const double scale = linalg::norm2(resolvent(r.op(), rep.z0, tol));
  const CMatrix ker = linalg::null_space(t, tol.rank, scale);
  rep.kernel_distance = linalg::subspace_distance(ker, gamma0, tol.rank);
  rep.selfadjoint = is_selfadjoint_relation(inv.op(), tol);
  rep.equal = rep.distance <= tol.subspace && rep.kernel_distance <= tol.subspace;
  return rep;
}

}  // namespace pkit
