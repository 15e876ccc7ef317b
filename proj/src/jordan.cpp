#include "pkit/jordan.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pkit/linalg.hpp"

namespace pkit {

namespace {

void require_bounded(const Realization& r, const char* what) {
  if (r.form() != Form::Bounded)
    throw Error(ErrorCode::InvalidArgument, std::string(what) + ": realization must be in bounded form");
}

CMatrix shifted_operator(const Realization& r, double alpha) {
  return r.op_matrix() - cplx(alpha) * linalg::identity(r.dim());
}

double operator_scale(const Realization& r) {
  return std::max(1.0, linalg::norm2(r.op_matrix()));
}

// B (B^* J B)^{-1} B^* J for an orthonormal B spanning a non-degenerate subspace.
CMatrix j_projection(const CMatrix& j, const CMatrix& b) {
  if (b.cols() == 0) return CMatrix::Zero(j.rows(), j.cols());
  const CMatrix g = linalg::hermitian_part(b.adjoint() * j * b);
  return b * linalg::solve(g, b.adjoint() * j, 1e-14, ErrorCode::DegenerateSubspace,
                           "Gram matrix of a chain block");
}

// Leading `k` left singular vectors.
CMatrix leading_basis(const CMatrix& m, Index k) {
  if (k <= 0) return CMatrix(m.rows(), 0);
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeThinU);
  return svd.matrixU().leftCols(k);
}

// Orthonormal basis of the J-orthogonal complement of span(b), of dimension n - rank.
CMatrix j_complement(const CMatrix& j, const CMatrix& b) {
  const Index n = j.rows();
  if (b.cols() == 0) return linalg::identity(n);
  if (b.cols() >= n) return CMatrix(n, 0);
  Eigen::JacobiSVD<CMatrix> svd(CMatrix(b.adjoint() * j), Eigen::ComputeFullV);
  return svd.matrixV().rightCols(n - b.cols());
}

}  // namespace

double chain_residual(const CMatrix& a, const JordanChain& chain) {
  const Index n = a.rows();
  const CMatrix nmat = a - cplx(chain.alpha) * linalg::identity(n);
  double xmax = 0.0;
  for (Index k = 0; k < chain.length(); ++k) xmax = std::max(xmax, chain.vectors.col(k).norm());
  if (xmax == 0.0) return 0.0;
  double worst = 0.0;
  for (Index k = 0; k < chain.length(); ++k) {
    CVector d = nmat * chain.vectors.col(k);
    if (k > 0) d -= chain.vectors.col(k - 1);
    worst = std::max(worst, d.norm());
  }
  return worst / (std::max(1.0, linalg::norm2(a)) * xmax);
}

Subspace root_manifold(const Realization& r, double alpha, const Tolerances& tol) {
  require_bounded(r, "root_manifold");
  return Subspace(r.space(),
                  linalg::generalized_kernel(shifted_operator(r, alpha), tol.rank,
                                             operator_scale(r))
                      .basis,
                  tol);
}

std::vector<JordanChain> canonical_chains(const Realization& r, double alpha,
                                          const Tolerances& tol) {
  require_bounded(r, "canonical_chains");
  const CMatrix nmat = shifted_operator(r, alpha);
  const double scale = operator_scale(r);
  const CMatrix& j = r.space().gram();
  const double jn = r.space().gram_norm();
  CMatrix w = linalg::generalized_kernel(nmat, tol.rank, scale).basis;
  if (w.cols() == 0) throw Error(ErrorCode::NotEigenvalue, "alpha is not an eigenvalue of A");

  std::vector<JordanChain> chains;
  while (w.cols() > 0) {
    Index l = 0;
    for (CMatrix y = w; y.cols() > 0; ++l) y = linalg::orth(nmat * y, tol.rank, scale);
    CMatrix z = w;
    for (Index k = 0; k + 1 < l; ++k) z = nmat * z;

    const CMatrix form = linalg::hermitian_part(w.adjoint() * j * z);
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(form);
    Index best = 0;
    eig.eigenvalues().cwiseAbs().maxCoeff(&best);
    if (std::abs(eig.eigenvalues()(best)) <= tol.rank * jn * std::max(1.0, linalg::norm2(z)))
      break;  // only degenerate chains remain

    JordanChain chain;
    chain.alpha = alpha;
    chain.vectors.resize(r.dim(), l);
    chain.vectors.col(l - 1) = w * eig.eigenvectors().col(best);
    for (Index k = l - 1; k > 0; --k) chain.vectors.col(k - 1) = nmat * chain.vectors.col(k);

    const CMatrix e = j_projection(j, linalg::orth(chain.vectors, 1e-14));
    const Index left = w.cols() - l;
    w = leading_basis((linalg::identity(r.dim()) - e) * w, left);
    chains.push_back(std::move(chain));
  }
  return chains;
}

std::optional<JordanChain> maximal_nondegenerate_chain(const Realization& r, double alpha,
                                                       const Tolerances& tol) {
  std::vector<JordanChain> chains = canonical_chains(r, alpha, tol);
  if (chains.empty()) return std::nullopt;
  const CMatrix b = linalg::orth(chains.front().vectors, 1e-14);
  if (b.cols() != chains.front().length() || !is_nondegenerate(Subspace(r.space(), b), tol.rank))
    return std::nullopt;
  return std::move(chains.front());
}

JordanChain regenerate_chain(const Realization& r, const JordanChain& chain, const CVector& h) {
  const CMatrix nmat = shifted_operator(r, chain.alpha);
  const CMatrix e = j_projection(r.space().gram(), linalg::orth(chain.vectors, 1e-14));
  JordanChain out;
  out.alpha = chain.alpha;
  const Index l = chain.length();
  out.vectors.resize(r.dim(), l);
  if (l == 0) return out;
  out.vectors.col(l - 1) = e * r.gamma() * h;
  for (Index k = l - 1; k > 0; --k) out.vectors.col(k - 1) = nmat * out.vectors.col(k);
  return out;
}

CVector chain_generator_in_range(const Realization& r, const JordanChain& chain,
                                 const Tolerances& tol) {
  require_bounded(r, "chain_generator_in_range");
  if (chain.length() == 0)
    throw Error(ErrorCode::InvalidArgument, "chain_generator_in_range: empty chain");
  const CMatrix nmat = shifted_operator(r, chain.alpha);
  const CMatrix e = j_projection(r.space().gram(), linalg::orth(chain.vectors, 1e-14));
  CMatrix z = e * r.gamma();
  for (Index k = 0; k + 1 < chain.length(); ++k) z = nmat * z;
  const CVector x0 = chain.vectors.col(0);
  CVector h = linalg::pinv(z, tol.rank) * x0;
  if (!((z * h - x0).norm() <= 1e-8 * x0.norm()) || x0.norm() == 0.0)
    throw Error(ErrorCode::NoGenerator,
                "chain_generator_in_range: x_0 is not reachable from the projected Gamma0");
  return h;
}

AlphaDecomposition alpha_decomposition(const Realization& r, double alpha,
                                       const Tolerances& tol) {
  require_bounded(r, "alpha_decomposition");
  if (!is_minimal(r, tol))
    throw Error(ErrorCode::NotMinimal, "alpha_decomposition: the realization is not minimal");
  const std::vector<JordanChain> chains = canonical_chains(r, alpha, tol);
  const Index n = r.dim();
  const CMatrix& j = r.space().gram();

  AlphaDecomposition out;
  out.alpha = alpha;
  CMatrix positive(n, 0);
  std::vector<const JordanChain*> negative_type;
  for (const auto& c : chains) {
    const CVector x = c.vectors.col(0);
    if (c.length() == 1 && x.dot(j * x).real() > 0.0)
      positive = linalg::hstack(positive, x);
    else
      negative_type.push_back(&c);
  }

  AlphaBlock k0;
  k0.kind = BlockKind::Positive;
  k0.basis = positive.cols() ? linalg::orth(positive, 1e-14) : CMatrix(n, 0);
  out.blocks.push_back(std::move(k0));
  for (const JordanChain* c : negative_type) {
    AlphaBlock b;
    b.kind = BlockKind::Chain;
    b.basis = linalg::orth(c->vectors, 1e-14);
    b.chain = *c;
    b.generator = chain_generator_in_range(r, *c, tol);
    b.generator_distance = linalg::subspace_distance(
        regenerate_chain(r, *c, *b.generator).vectors, b.basis, tol.rank);
    out.blocks.push_back(std::move(b));
  }
  out.chain_count = static_cast<Index>(negative_type.size());

  CMatrix root(n, 0);
  for (const auto& b : out.blocks) root = linalg::hstack(root, b.basis);
  AlphaBlock rest;
  rest.kind = BlockKind::Remainder;
  rest.basis = j_complement(j, root);
  out.blocks.push_back(std::move(rest));

  const double jn = r.space().gram_norm();
  CMatrix used = CMatrix::Zero(n, n);
  for (std::size_t i = 0; i < out.blocks.size(); ++i) {
    AlphaBlock& b = out.blocks[i];
    b.projection = i + 1 < out.blocks.size() ? j_projection(j, b.basis)
                                              : CMatrix(linalg::identity(n) - used);
    used += b.projection;
    if (b.basis.cols() > 0)
      b.kappa = hermitian_inertia(linalg::hermitian_part(b.basis.adjoint() * j * b.basis),
                                  tol.rank, jn)
                    .minus;
    b.component = restrict_realization(r, b.basis, b.projection, {}, tol);
    out.kappa_sum += b.kappa;
    for (std::size_t k = 0; k < i; ++k) {
      const CMatrix cross = out.blocks[k].basis.adjoint() * j * b.basis;
      if (cross.size() > 0)
        out.orthogonality_defect = std::max(out.orthogonality_defect, linalg::norm2(cross) / jn);
    }
  }
  out.kappa_whole = r.space().neg_index();

  std::vector<GNFunction> parts;
  for (const auto& b : out.blocks) parts.push_back(GNFunction::from_realization(*b.component));
  out.residual =
      sum_residual(GNFunction::from_realization(r), parts, verification_grid(), tol);
  return out;
}

PoleCancellation::PoleCancellation(Realization r, JordanChain chain, const Tolerances& tol)
    : r_(std::move(r)), chain_(std::move(chain)) {
  require_bounded(r_, "pole_cancellation");
  if (chain_.length() == 0)
    throw Error(ErrorCode::InvalidArgument, "pole_cancellation: empty chain");
  if (chain_.vectors.rows() != r_.dim())
    throw Error(ErrorCode::DimensionMismatch, "pole_cancellation: chain does not match space");
  const CVector top = chain_.vectors.col(chain_.length() - 1);
  if (r_.coeff_dim() > 0) {
    CVector h = linalg::pinv(r_.gamma(), tol.rank) * top;
    if ((r_.gamma() * h - top).norm() <= 1e-8 * top.norm()) h_ = std::move(h);
  }
}

CVector PoleCancellation::operator()(cplx z, const Tolerances& tol) const {
  const CMatrix q = evaluate(r_, z, tol);
  CVector p = CVector::Zero(r_.dim());
  cplx power{1.0, 0.0};
  for (Index k = 0; k < chain_.length(); ++k) {
    p += power * chain_.vectors.col(k);
    power *= z - chain_.alpha;
  }
  return linalg::solve(q, r_.gamma_plus() * p, tol.singular, ErrorCode::SingularValue, "Q(z)");
}

CVector PoleCancellation::predicted(cplx z) const {
  if (!h_)
    throw Error(ErrorCode::NoGenerator, "pole_cancellation: chain top is not in range(Gamma0)");
  return -std::pow(z - chain_.alpha, static_cast<int>(chain_.length())) * *h_;
}

PoleCancellation pole_cancellation(const Realization& r, const JordanChain& chain,
                                   const Tolerances& tol) {
  return PoleCancellation(r, chain, tol);
}

DecayFit decay_rate(const PoleCancellation& eta, int k_min, int k_max, const Tolerances& tol) {
  DecayFit fit;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int count = 0;
  for (int k = k_min; k <= k_max; ++k) {
    const double t = std::pow(10.0, -k);
    const double norm = eta(cplx(eta.chain().alpha + t), tol).norm();
    fit.distances.push_back(t);
    fit.norms.push_back(norm);
    const double x = std::log(t), y = std::log(norm);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  if (count >= 2) fit.slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
  return fit;
}

}  // namespace pkit
