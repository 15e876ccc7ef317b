#include "pkit/decomposition.hpp"

#include <algorithm>

#include "pkit/linalg.hpp"

namespace pkit {

namespace {

bool evaluation_failure(const Error& e) {
  return e.code() == ErrorCode::NotInResolventSet || e.code() == ErrorCode::SingularValue ||
         e.code() == ErrorCode::SchurSingular;
}

Component make_component(std::string name, Realization r, CMatrix embedding,
                         const Tolerances& tol) {
  KappaEstimate k = negative_index(r, {}, tol);
  GNFunction f = GNFunction::from_realization(r);
  return {std::move(name), std::move(f), std::move(r), std::move(k), std::move(embedding)};
}

DecompositionReport finish(const GNFunction& whole, KappaEstimate kappa_whole,
                           std::vector<Component> components, const Tolerances& tol) {
  DecompositionReport rep;
  std::vector<GNFunction> parts;
  for (const auto& c : components) {
    rep.kappa_sum += c.kappa.value;
    parts.push_back(c.function);
  }
  rep.components = std::move(components);
  rep.kappa_whole = std::move(kappa_whole);
  rep.desirable = rep.kappa_sum == rep.kappa_whole.value;
  rep.residual = sum_residual(whole, parts, verification_grid(), tol);
  return rep;
}

Index column_rank(const CMatrix& m, double tol, double scale) {
  return m.cols() == 0 ? 0 : linalg::rank(m, tol, scale);
}

}  // namespace

const std::vector<cplx>& verification_grid() {
  static const std::vector<cplx> grid = [] {
    std::vector<cplx> g;
    for (int k = 0; k < 10; ++k) g.emplace_back(-2.1 + 0.47 * k, 0.35 + 0.29 * k);
    return g;
  }();
  return grid;
}

double sum_residual(const GNFunction& whole, const std::vector<GNFunction>& parts,
                    const std::vector<cplx>& points, const Tolerances& tol) {
  double worst = 0.0;
  for (const cplx z : points) {
    try {
      const CMatrix q = whole(z, tol);
      CMatrix s = CMatrix::Zero(q.rows(), q.cols());
      for (const auto& p : parts) s += p(z, tol);
      worst = std::max(worst, linalg::norm2(q - s) / std::max(1.0, linalg::norm2(q)));
    } catch (const Error& e) {
      if (!evaluation_failure(e)) throw;
    }
  }
  return worst;
}

Realization restrict_realization(const Realization& r, const CMatrix& basis, const CMatrix& e,
                                 const CMatrix& ref_value_adj, const Tolerances& tol) {
  const CMatrix bt = basis.adjoint();
  const PontryaginSpace space =
      basis.cols() == 0 ? PontryaginSpace()
                        : PontryaginSpace(linalg::hermitian_part(bt * r.space().gram() * basis), tol);
  CMatrix gamma = bt * e * r.gamma();
  if (r.form() == Form::Bounded)
    return Realization::bounded(space, bt * e * r.op_matrix() * basis, std::move(gamma), tol);
  LinearRelation rel(space, bt * e * r.op().domain_part(), bt * e * r.op().value_part(), tol);
  if (ref_value_adj.size() == 0)
    return Realization::general(space, std::move(rel), std::move(gamma), r.ref_point(), tol);
  return Realization::general(space, std::move(rel), std::move(gamma), r.ref_point(),
                              ref_value_adj, tol);
}

DecompositionReport split_by_invariant_subspace(const Realization& r, const Subspace& s,
                                                const Tolerances& tol) {
  const Index n = r.dim();
  if (s.ambient().dim() != n)
    throw Error(ErrorCode::DimensionMismatch, "split: subspace lives in a different space");
  if (!is_minimal(r, tol))
    throw Error(ErrorCode::NotMinimal, "split: the realization is not minimal");
  if (!is_nondegenerate(s, tol.rank))
    throw Error(ErrorCode::DegenerateSubspace, "split: subspace is degenerate");

  const CMatrix e1 = orthogonal_projection(s, tol.rank);
  const CMatrix e2 = linalg::identity(n) - e1;
  const double en = linalg::norm2(e1);
  if (r.form() == Form::Bounded) {
    const CMatrix& a = r.op_matrix();
    if (linalg::norm2(e2 * a * e1) > tol.invariance * linalg::norm2(a) * en)
      throw Error(ErrorCode::NotInvariant, "split: subspace is not invariant under A");
  } else if (r.op().generators() > 0) {
    const CMatrix graph = linalg::orth(r.op().stacked(), tol.rank);
    const CMatrix image = linalg::block_diag(e1, e1) * r.op().stacked();
    const CMatrix off = image - graph * (graph.adjoint() * image);
    if (linalg::norm2(off) > tol.invariance * std::max(1.0, en) * linalg::norm2(r.op().stacked()))
      throw Error(ErrorCode::NotInvariant, "split: subspace is not invariant under the relation");
  }

  const CMatrix b1 = linalg::orth(s.basis(), tol.rank);
  const CMatrix b2 = linalg::orth(orthogonal_complement(s, tol.rank).basis(), tol.rank);
  if (b1.cols() + b2.cols() != n)
    throw Error(ErrorCode::DegenerateSubspace, "split: subspace and its complement do not span");

  CMatrix c1, c2;
  if (r.form() == Form::General) {
    // The Hermitian part of the constant goes to the first component.
    const cplx i{0.0, 1.0};
    const double y0 = r.ref_point().imag();
    const CMatrix g1 = b1.adjoint() * e1 * r.gamma();
    const CMatrix g2 = b2.adjoint() * e2 * r.gamma();
    const CMatrix j1 = b1.adjoint() * r.space().gram() * b1;
    const CMatrix j2 = b2.adjoint() * r.space().gram() * b2;
    c1 = linalg::hermitian_part(r.ref_value_adj()) - i * y0 * (g1.adjoint() * j1 * g1);
    c2 = -i * y0 * (g2.adjoint() * j2 * g2);
  }
  std::vector<Component> comps;
  comps.push_back(make_component("Q1", restrict_realization(r, b1, e1, c1, tol), b1, tol));
  comps.push_back(make_component("Q2", restrict_realization(r, b2, e2, c2, tol), b2, tol));
  DecompositionReport rep =
      finish(GNFunction::from_realization(r), negative_index(r, {}, tol), std::move(comps), tol);
  for (const auto& c : rep.components)
    if (!is_minimal(*c.realization, tol)) rep.notes.push_back(c.name + " is not minimal");
  return rep;
}

Realization sum_realizations(const Realization& r1, const Realization& r2,
                             const Tolerances& tol) {
  if (r1.coeff_dim() != r2.coeff_dim())
    throw Error(ErrorCode::DimensionMismatch, "sum_realizations: coefficient spaces differ");
  const PontryaginSpace space = direct_sum(r1.space(), r2.space());
  CMatrix gamma = linalg::vstack(r1.gamma(), r2.gamma());
  if (r1.form() == Form::Bounded && r2.form() == Form::Bounded)
    return Realization::bounded(space, linalg::block_diag(r1.op_matrix(), r2.op_matrix()),
                                std::move(gamma), tol);
  if (r1.form() == Form::General && r2.form() == Form::General &&
      r1.ref_point() != r2.ref_point())
    throw Error(ErrorCode::InvalidArgument,
                "sum_realizations: general forms use different reference points");
  const cplx z0 = r1.form() == Form::General ? r1.ref_point() : r2.ref_point();
  const Realization g1 = r1.form() == Form::General ? r1 : to_general(r1, z0, tol);
  const Realization g2 = r2.form() == Form::General ? r2 : to_general(r2, z0, tol);
  return Realization::general(space, relation_direct_sum(g1.op(), g2.op()),
                              linalg::vstack(g1.gamma(), g2.gamma()), z0,
                              g1.ref_value_adj() + g2.ref_value_adj(), tol);
}

Realization block_diag_realization(const Realization& r1, const Realization& r2,
                                   const Tolerances& tol) {
  const PontryaginSpace space = direct_sum(r1.space(), r2.space());
  if (r1.form() == Form::Bounded && r2.form() == Form::Bounded)
    return Realization::bounded(space, linalg::block_diag(r1.op_matrix(), r2.op_matrix()),
                                linalg::block_diag(r1.gamma(), r2.gamma()), tol);
  if (r1.form() == Form::General && r2.form() == Form::General &&
      r1.ref_point() != r2.ref_point())
    throw Error(ErrorCode::InvalidArgument,
                "block_diag_realization: general forms use different reference points");
  const cplx z0 = r1.form() == Form::General ? r1.ref_point() : r2.ref_point();
  const Realization g1 = r1.form() == Form::General ? r1 : to_general(r1, z0, tol);
  const Realization g2 = r2.form() == Form::General ? r2 : to_general(r2, z0, tol);
  return Realization::general(space, relation_direct_sum(g1.op(), g2.op()),
                              linalg::block_diag(g1.gamma(), g2.gamma()), z0,
                              linalg::block_diag(g1.ref_value_adj(), g2.ref_value_adj()), tol);
}

GNFunction block_diag(const GNFunction& f1, const GNFunction& f2) {
  if (f1.out_dim() == 0) return f2;
  if (f2.out_dim() == 0) return f1;
  return GNFunction::block_diag({f1, f2});
}

SumMinimalityReport sum_minimality_check(const Realization& r1, const Realization& r2,
                                         const Tolerances& tol) {
  SumMinimalityReport rep;
  const Realization sum = sum_realizations(r1, r2, tol);
  rep.first_minimal = is_minimal(r1, tol);
  rep.second_minimal = is_minimal(r2, tol);
  rep.sum_minimal = is_minimal(sum, tol);
  const double gn = linalg::norm2(sum.gamma());
  rep.gamma_plus_injective =
      sum.dim() == 0 ||
      column_rank(sum.gamma_plus(), tol.rank, gn * sum.space().gram_norm()) == sum.dim();
  const Index m = sum.coeff_dim();
  rep.first_gamma_injective = column_rank(r1.gamma(), tol.rank, 0.0) == m && m > 0;
  rep.second_gamma_injective = column_rank(r2.gamma(), tol.rank, 0.0) == m && m > 0;
  if (sum.form() == Form::Bounded) rep.separating = injectivity_predicates(sum, tol).separating;
  rep.injective_implies_minimal = !rep.gamma_plus_injective || rep.sum_minimal;
  if (rep.separating && rep.sum_minimal &&
      (rep.first_gamma_injective || rep.second_gamma_injective))
    rep.minimal_implies_separating = *rep.separating;
  return rep;
}

ConverseProbe split_converse_probe(const Realization& r1, const Realization& r2,
                                   const Tolerances& tol) {
  ConverseProbe p;
  const Realization sum = sum_realizations(r1, r2, tol);
  p.components_minimal = is_minimal(r1, tol) && is_minimal(r2, tol);
  p.sum_residual = sum_residual(GNFunction::from_realization(sum),
                                {GNFunction::from_realization(r1), GNFunction::from_realization(r2)},
                                verification_grid(), tol);
  p.sum_matches = p.sum_residual <= 1e-8;
  p.kappa1 = negative_index(r1, {}, tol).value;
  p.kappa2 = negative_index(r2, {}, tol).value;
  p.kappa_sum_function = negative_index(sum, {}, tol).value;
  p.kappa_additive = p.kappa_sum_function == p.kappa1 + p.kappa2;
  const SumMinimalityReport sum_rep = sum_minimality_check(r1, r2, tol);
  p.gamma_plus_injective = sum_rep.gamma_plus_injective;
  p.sum_minimal = sum_rep.sum_minimal;
  p.converse_fails =
      p.components_minimal && p.sum_matches && p.kappa_additive && !p.sum_minimal;
  if (p.components_minimal && p.sum_matches && p.gamma_plus_injective)
    p.additivity_holds = p.sum_minimal && p.kappa_additive;
  return p;
}

namespace {

struct SpectralSplit {
  CMatrix root;       // orthonormal basis of the root subspace at alpha
  CMatrix rest;       // orthonormal basis of the other root subspaces
  CMatrix projector;  // Riesz projector onto root along rest
};

SpectralSplit spectral_split(const Realization& r, double alpha, const Tolerances& tol) {
  if (r.form() != Form::Bounded)
    throw Error(ErrorCode::InvalidArgument, "local_split: realization must be in bounded form");
  const Index n = r.dim();
  const CMatrix shifted = r.op_matrix() - cplx(alpha) * linalg::identity(n);
  const double scale = std::max(1.0, linalg::norm2(r.op_matrix()));
  const linalg::Staircase right = linalg::generalized_kernel(shifted, tol.rank, scale);
  if (right.basis.cols() == 0)
    throw Error(ErrorCode::NotEigenvalue, "alpha is not an eigenvalue of A");
  const linalg::Staircase left =
      linalg::generalized_kernel(CMatrix(shifted.adjoint()), tol.rank, scale);
  if (left.basis.cols() != right.basis.cols())
    throw Error(ErrorCode::ProjectorNotJSymmetric,
                "left and right root subspaces at alpha differ in dimension");
  SpectralSplit out;
  out.root = right.basis;
  const CMatrix& y = left.basis;
  out.projector = out.root * linalg::solve(y.adjoint() * out.root, y.adjoint(), tol.singular,
                                           ErrorCode::ProjectorNotJSymmetric,
                                           "pairing of left and right root subspaces");
  const CMatrix& j = r.space().gram();
  const CMatrix defect = j * out.projector - out.projector.adjoint() * j;
  if (linalg::norm2(defect) > 1e-8 * linalg::norm2(j) * linalg::norm2(out.projector))
    throw Error(ErrorCode::ProjectorNotJSymmetric,
                "spectral projector at alpha is not J-symmetric");
  if (right.basis.cols() == n) {
    out.rest = CMatrix(n, 0);
  } else {
    Eigen::JacobiSVD<CMatrix> svd(CMatrix(y.adjoint()), Eigen::ComputeFullV);
    out.rest = svd.matrixV().rightCols(n - y.cols());
  }
  return out;
}

}  // namespace

DecompositionReport local_split(const Realization& r, double alpha, const Tolerances& tol) {
  const SpectralSplit sp = spectral_split(r, alpha, tol);
  const CMatrix e2 = linalg::identity(r.dim()) - sp.projector;
  std::vector<Component> comps;
  comps.push_back(make_component(
      "Q_alpha", restrict_realization(r, sp.root, sp.projector, {}, tol), sp.root, tol));
  comps.push_back(
      make_component("H_alpha", restrict_realization(r, sp.rest, e2, {}, tol), sp.rest, tol));
  DecompositionReport rep =
      finish(GNFunction::from_realization(r), negative_index(r, {}, tol), std::move(comps), tol);
  const Realization& qa = *rep.components[0].realization;
  if (qa.coeff_dim() > 0) {
    const RVector s = linalg::singular_values(qa.gamma_plus() * qa.gamma());
    if (!(s(s.size() - 1) > tol.rank * std::max(1.0, s(0))))
      rep.notes.push_back("Gamma0^+ Gamma0 of Q_alpha is singular");
  }
  return rep;
}

LocalSplitChecks local_split_checks(const Realization& r, double alpha,
                                    const DecompositionReport& rep, const Tolerances& tol) {
  LocalSplitChecks out;
  const Component& qa = rep.components.at(0);
  const Component& ha = rep.components.at(1);
  try {
    evaluate(*ha.realization, cplx(alpha), tol);
    out.remainder_regular_at_alpha = true;
  } catch (const Error& e) {
    if (!evaluation_failure(e)) throw;
  }
  const Realization& ra = *qa.realization;
  const double scale = std::max(1.0, linalg::norm2(r.op_matrix()));
  const CMatrix inner =
      linalg::generalized_kernel(ra.op_matrix() - cplx(alpha) * linalg::identity(ra.dim()),
                                 tol.rank, scale)
          .basis;
  const CMatrix whole =
      linalg::generalized_kernel(r.op_matrix() - cplx(alpha) * linalg::identity(r.dim()),
                                 tol.rank, scale)
          .basis;
  out.root_distance = linalg::subspace_distance(qa.embedding * inner, whole, tol.rank);
  out.component_gram_singular =
      std::find(rep.notes.begin(), rep.notes.end(), "Gamma0^+ Gamma0 of Q_alpha is singular") !=
      rep.notes.end();
  return out;
}

GNFunction inverse_affine_part(const InversionContext& ctx) {
  const Realization& r = ctx.base();
  const CMatrix& ginv = ctx.gram_product_inverse();
  RationalTable t;
  t.poly.push_back(-ginv * r.gamma_plus() * r.op_matrix() * r.gamma() * ginv);
  t.poly.push_back(ginv);
  return GNFunction::rational(std::move(t));
}

Realization inverse_remainder_realization(const InversionContext& ctx, const Tolerances& tol) {
  const Realization& r = ctx.base();
  const CMatrix& c = ctx.complement_basis();
  if (c.cols() == 0)
    return Realization::bounded(PontryaginSpace(), CMatrix(0, 0), CMatrix(0, r.coeff_dim()), tol);
  // Basis W = C V |L|^{-1/2} from C^* J C = V L V^*, so that W^* J W = sign(L).
  // Nothing here inverts C^* J C, which is ill-conditioned when range(I - P)
  // is close to degenerate.
  const Eigen::SelfAdjointEigenSolver<CMatrix> eig(ctx.compressed_gram());
  const RVector& l = eig.eigenvalues();
  const CMatrix& v = eig.eigenvectors();
  const RVector scale = l.cwiseAbs().cwiseSqrt().cwiseInverse();
  const RVector sign = l.unaryExpr([](double x) { return x < 0 ? -1.0 : 1.0; });
  const CMatrix d = sign.cast<cplx>().asDiagonal();
  const auto s = scale.cast<cplx>().asDiagonal();
  const CMatrix form = s * (v.adjoint() * ctx.compressed_form() * v) * s;
  const CMatrix y = c.adjoint() * r.space().gram() * r.op_matrix() * r.gamma() *
                    ctx.gram_product_inverse();
  return Realization::bounded(PontryaginSpace(d, tol), d * linalg::hermitian_part(form),
                              d * (s * (v.adjoint() * y)), tol);
}

DecompositionReport invert_with_split(const Realization& r, const Tolerances& tol) {
  const InversionContext ctx = build_context(r, tol);
  std::vector<Component> comps;
  KappaEstimate k1;
  k1.method = KappaMethod::Exact;
  k1.value = hermitian_inertia(ctx.gram_product_inverse(), tol.rank).minus;
  comps.push_back({"Qhat1", inverse_affine_part(ctx), std::nullopt, k1, CMatrix()});
  comps.push_back(make_component("Qhat2", inverse_remainder_realization(ctx, tol),
                                 ctx.complement_basis(), tol));
  DecompositionReport rep =
      finish(GNFunction::inverse_of(GNFunction::from_realization(r)), negative_index(r, {}, tol),
             std::move(comps), tol);
  if (!is_minimal(*rep.components[1].realization, tol))
    rep.notes.push_back("Qhat2 representation is not minimal");
  return rep;
}

}  // namespace pkit
