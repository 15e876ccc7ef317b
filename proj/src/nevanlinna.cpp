#include "pkit/nevanlinna.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "pkit/linalg.hpp"

namespace pkit {

namespace {

constexpr cplx kI{0.0, 1.0};

// Skew-Hermitian part that the constant Q(z0)^* of a general-form
// realization must carry for Q(conj z)^* = Q(z) to hold.
CMatrix required_skew_part(const CMatrix& gamma, const PontryaginSpace& space, cplx z0) {
  return -kI * z0.imag() * (gamma.adjoint() * space.gram() * gamma);
}

}  // namespace

Realization::Realization(Form form, PontryaginSpace space, LinearRelation op, CMatrix gamma)
    : form_(form), space_(std::move(space)), op_(std::move(op)), gamma_(std::move(gamma)) {}

Realization Realization::bounded(PontryaginSpace space, CMatrix a, CMatrix gamma0,
                                 const Tolerances& tol) {
  if (a.rows() != space.dim() || a.cols() != space.dim())
    throw Error(ErrorCode::DimensionMismatch, "realization: operator does not match space");
  if (gamma0.rows() != space.dim())
    throw Error(ErrorCode::DimensionMismatch, "realization: Gamma0 rows differ from space dimension");
  if (!a.allFinite() || !gamma0.allFinite())
    throw Error(ErrorCode::InvalidArgument, "realization: non-finite entries");
  if (!is_selfadjoint(a, space, tol.rank))
    throw Error(ErrorCode::InvalidArgument, "realization: operator is not self-adjoint in the space");
  LinearRelation graph = from_operator(a, space);
  Realization r(Form::Bounded, std::move(space), std::move(graph), std::move(gamma0));
  r.a_ = std::move(a);
  r.ref_value_adj_ = CMatrix::Zero(r.coeff_dim(), r.coeff_dim());
  return r;
}

Realization Realization::general(PontryaginSpace space, LinearRelation a, CMatrix gamma,
                                 cplx z0, CMatrix ref_value_adj, const Tolerances& tol) {
  if (a.dim() != space.dim() || gamma.rows() != space.dim())
    throw Error(ErrorCode::DimensionMismatch, "realization: relation or Gamma does not match space");
  if (ref_value_adj.rows() != gamma.cols() || ref_value_adj.cols() != gamma.cols())
    throw Error(ErrorCode::DimensionMismatch, "realization: Q(z0)^* must be m x m");
  if (!(z0.imag() > 0.0))
    throw Error(ErrorCode::InvalidArgument, "realization: reference point must lie in the upper half-plane");
  if (!is_selfadjoint_relation(a, tol))
    throw Error(ErrorCode::InvalidArgument, "realization: relation is not self-adjoint");
  if (!in_resolvent_set(a, z0, tol))
    throw Error(ErrorCode::NotInResolventSet, "realization: reference point is not in the resolvent set");
  const CMatrix skew = 0.5 * (ref_value_adj - ref_value_adj.adjoint());
  const CMatrix want = required_skew_part(gamma, space, z0);
  const double scale = std::max(1.0, linalg::norm2(want));
  if (linalg::norm2(skew - want) > tol.subspace * scale)
    throw Error(ErrorCode::InvalidArgument,
                "realization: skew-Hermitian part of Q(z0)^* is inconsistent with Gamma");
  Realization r(Form::General, std::move(space), std::move(a), std::move(gamma));
  r.z0_ = z0;
  r.ref_value_adj_ = std::move(ref_value_adj);
  return r;
}

Realization Realization::general(PontryaginSpace space, LinearRelation a, CMatrix gamma,
                                 cplx z0, const Tolerances& tol) {
  CMatrix c = required_skew_part(gamma, space, z0);
  return general(std::move(space), std::move(a), std::move(gamma), z0, std::move(c), tol);
}

const CMatrix& Realization::op_matrix() const {
  if (!a_) throw Error(ErrorCode::InvalidArgument, "realization has no bounded operator");
  return *a_;
}

CMatrix Realization::gamma_plus() const { return pkit::gamma_plus(gamma_, space_); }

CMatrix evaluate(const Realization& r, cplx z, const Tolerances& tol) {
  const Index n = r.dim();
  if (r.form() == Form::Bounded) {
    const CMatrix shifted = r.op_matrix() - z * linalg::identity(n);
    const CMatrix x = linalg::solve(shifted, r.gamma(), tol.singular,
                                    ErrorCode::NotInResolventSet, "A - z");
    return r.gamma_plus() * x;
  }
  const CMatrix res = resolvent(r.op(), z, tol);
  const CMatrix gz = r.gamma() + (z - r.ref_point()) * (res * r.gamma());
  return r.ref_value_adj() + (z - std::conj(r.ref_point())) * (r.gamma_plus() * gz);
}

Realization to_general(const Realization& r, cplx z0, const Tolerances& tol) {
  if (r.form() != Form::Bounded)
    throw Error(ErrorCode::InvalidArgument, "to_general: realization is already in general form");
  const Index n = r.dim();
  const CMatrix& a = r.op_matrix();
  const CMatrix gamma = linalg::solve(a - z0 * linalg::identity(n), r.gamma(), tol.singular,
                                      ErrorCode::NotInResolventSet, "A - z0");
  const CMatrix c = r.gamma_plus() *
                    linalg::solve(a - std::conj(z0) * linalg::identity(n), r.gamma(),
                                  tol.singular, ErrorCode::NotInResolventSet, "A - conj z0");
  return Realization::general(r.space(), r.op(), gamma, z0, c, tol);
}

Realization to_bounded(const Realization& r, const Tolerances& tol) {
  if (r.form() == Form::Bounded) return r;
  CMatrix a;
  if (!is_operator_graph(r.op(), &a, tol))
    throw Error(ErrorCode::InvalidArgument, "to_bounded: relation is not the graph of an operator");
  const Index n = r.dim();
  const cplx z0 = r.ref_point();
  const CMatrix gamma0 = (a - z0 * linalg::identity(n)) * r.gamma();
  Realization out = Realization::bounded(r.space(), a, gamma0, tol);
  const CMatrix implied = evaluate(out, std::conj(z0), tol);
  const double scale = std::max(1.0, linalg::norm2(implied));
  if (linalg::norm2(implied - r.ref_value_adj()) > tol.subspace * scale)
    throw Error(ErrorCode::InvalidArgument,
                "to_bounded: constant term differs from the bounded form by a Hermitian matrix");
  return out;
}

// ---------------------------------------------------------------------------
// GNFunction

GNFunction GNFunction::from_realization(Realization r) {
  const Index dim = r.coeff_dim();
  return GNFunction(std::make_shared<const Node>(Node{Node::RealizationBacked{std::move(r)}, dim}));
}

GNFunction GNFunction::sum(std::vector<GNFunction> terms) {
  if (terms.empty())
    throw Error(ErrorCode::InvalidArgument, "GNFunction::sum: no terms");
  const Index m = terms.front().out_dim();
  for (const auto& t : terms)
    if (t.out_dim() != m)
      throw Error(ErrorCode::DimensionMismatch, "GNFunction::sum: terms differ in size");
  const Index dim = m;
  return GNFunction(std::make_shared<const Node>(Node{Node::Sum{std::move(terms)}, dim}));
}

GNFunction GNFunction::block_diag(std::vector<GNFunction> blocks) {
  Index m = 0;
  for (const auto& b : blocks) m += b.out_dim();
  const Index dim = m;
  return GNFunction(std::make_shared<const Node>(Node{Node::BlockDiag{std::move(blocks)}, dim}));
}

GNFunction GNFunction::inverse_of(GNFunction f) {
  const Index dim = f.out_dim();
  return GNFunction(std::make_shared<const Node>(Node{Node::InverseOf{std::move(f)}, dim}));
}

GNFunction GNFunction::rational(RationalTable table) {
  Index m = -1;
  auto check = [&m](const CMatrix& c) {
    if (c.rows() != c.cols())
      throw Error(ErrorCode::DimensionMismatch, "rational: coefficients must be square");
    if (m < 0) m = c.rows();
    if (c.rows() != m)
      throw Error(ErrorCode::DimensionMismatch, "rational: coefficients differ in size");
  };
  for (const auto& c : table.poly) check(c);
  for (const auto& p : table.poles)
    for (const auto& c : p.coeffs) check(c);
  if (m < 0) throw Error(ErrorCode::InvalidArgument, "rational: empty coefficient table");
  const Index dim = m;
  return GNFunction(std::make_shared<const Node>(Node{Node::ExplicitRational{std::move(table)}, dim}));
}

GNFunction GNFunction::scalar_pole(cplx residue, cplx point) {
  RationalTable t;
  t.poles.push_back({point, {CMatrix::Constant(1, 1, residue)}});
  return rational(std::move(t));
}

GNFunction GNFunction::constant(CMatrix value) {
  RationalTable t;
  t.poly.push_back(std::move(value));
  return rational(std::move(t));
}

Index GNFunction::out_dim() const { return node_->out_dim; }

const Realization* GNFunction::realization() const {
  if (const auto* rb = std::get_if<Node::RealizationBacked>(&node_->v)) return &rb->r;
  return nullptr;
}

CMatrix GNFunction::operator()(cplx z, const Tolerances& tol) const {
  const Index m = node_->out_dim;
  return std::visit(
      [&](const auto& n) -> CMatrix {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Node::RealizationBacked>) {
          return evaluate(n.r, z, tol);
        } else if constexpr (std::is_same_v<T, Node::Sum>) {
          CMatrix acc = CMatrix::Zero(m, m);
          for (const auto& t : n.terms) acc += t(z, tol);
          return acc;
        } else if constexpr (std::is_same_v<T, Node::BlockDiag>) {
          CMatrix acc = CMatrix::Zero(m, m);
          Index off = 0;
          for (const auto& b : n.blocks) {
            acc.block(off, off, b.out_dim(), b.out_dim()) = b(z, tol);
            off += b.out_dim();
          }
          return acc;
        } else if constexpr (std::is_same_v<T, Node::InverseOf>) {
          return -linalg::inverse(n.inner(z, tol), tol.singular, ErrorCode::SingularValue,
                                  "Q(z)");
        } else {
          CMatrix acc = CMatrix::Zero(m, m);
          cplx power{1.0, 0.0};
          for (const auto& c : n.table.poly) {
            acc += power * c;
            power *= z;
          }
          for (const auto& p : n.table.poles) {
            const cplx d = z - p.point;
            if (std::abs(d) == 0.0)
              throw Error(ErrorCode::NotInResolventSet, "rational function evaluated at a pole");
            cplx inv = 1.0 / d;
            cplx f = inv;
            for (const auto& c : p.coeffs) {
              acc += f * c;
              f *= inv;
            }
          }
          return acc;
        }
      },
      node_->v);
}

CMatrix evaluate(const GNFunction& f, cplx z, const Tolerances& tol) { return f(z, tol); }

CMatrix kernel(const GNFunction& f, cplx z, cplx w, const Tolerances& tol) {
  const cplx denom = z - std::conj(w);
  const double step = 1e-6 * std::max(1.0, std::abs(z));
  if (std::abs(denom) <= step * 1e-3) {
    return (f(z + step, tol) - f(z - step, tol)) / (2.0 * step);
  }
  return (f(z, tol) - f(w, tol).adjoint()) / denom;
}

// ---------------------------------------------------------------------------
// Negative squares

namespace {

bool evaluation_failure(const Error& e) {
  return e.code() == ErrorCode::NotInResolventSet || e.code() == ErrorCode::SingularValue;
}

}  // namespace

KappaEstimate negative_squares_sampled(const GNFunction& f, const SamplerConfig& cfg,
                                       const Tolerances& tol) {
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> re(cfg.re_min, cfg.re_max);
  std::uniform_real_distribution<double> im(cfg.im_min, cfg.im_max);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const Index m = f.out_dim();
  const Index p = cfg.points;

  KappaEstimate best;
  best.method = KappaMethod::Sampled;
  best.samples = p * cfg.trials;
  bool have_best = false;

  for (Index trial = 0; trial < cfg.trials; ++trial) {
    std::vector<cplx> pts(p);
    std::vector<CMatrix> values(p);
    std::vector<CVector> dirs(p);
    for (Index i = 0; i < p; ++i) {
      for (int attempt = 0;; ++attempt) {
        const cplx z{re(rng), im(rng)};
        try {
          values[i] = f(z, tol);
          pts[i] = z;
          break;
        } catch (const Error& e) {
          if (!evaluation_failure(e) || attempt > 100) throw;
        }
      }
      CVector h(m);
      for (Index k = 0; k < m; ++k) h(k) = cplx(gauss(rng), gauss(rng));
      const double nh = h.norm();
      dirs[i] = nh > 0 ? CVector(h / nh) : h;
    }

    // entry (i, j) = (N(z_j, z_i) h_j, h_i)
    CMatrix sample(p, p);
    for (Index i = 0; i < p; ++i) {
      for (Index j = i; j < p; ++j) {
        const CMatrix nk = (values[j] - values[i].adjoint()) / (pts[j] - std::conj(pts[i]));
        const cplx v = dirs[i].dot(nk * dirs[j]);
        sample(i, j) = v;
        sample(j, i) = std::conj(v);
      }
      sample(i, i) = sample(i, i).real();
    }
    // Diagonal congruence scaling keeps the inertia and balances the rows.
    RVector scale(p);
    for (Index i = 0; i < p; ++i) {
      const double rn = sample.row(i).norm();
      scale(i) = rn > 0 ? 1.0 / std::sqrt(rn) : 1.0;
    }
    const CMatrix balanced = scale.asDiagonal() * sample * scale.asDiagonal();
    const Inertia in = hermitian_inertia(balanced, tol.rank);
    if (!have_best || in.minus > best.value) {
      best.value = in.minus;
      best.witness_points = pts;
      have_best = true;
    }
  }
  return best;
}

Subspace minimal_subspace(const Realization& r, const Tolerances& tol) {
  const Index n = r.dim();
  if (n == 0 || r.coeff_dim() == 0) return Subspace::zero(r.space());

  if (r.form() == Form::Bounded) {
    const CMatrix& a = r.op_matrix();
    const double an = linalg::norm2(a);
    const CMatrix a_scaled = an > 0 ? CMatrix(a / an) : a;
    CMatrix basis = linalg::orth(r.gamma(), tol.rank);
    CMatrix front = basis;
    for (Index k = 0; k < n && front.cols() > 0 && basis.cols() < n; ++k) {
      CMatrix x = a_scaled * front;
      x -= basis * (basis.adjoint() * x);
      x -= basis * (basis.adjoint() * x);
      front = linalg::orth(x, tol.rank, 1.0);
      basis = linalg::hstack(basis, front);
    }
    return Subspace(r.space(), basis, tol);
  }

  // Gamma_z = (I + (z - z0)(A - z)^{-1}) Gamma at n + 1 points of the resolvent set.
  const cplx z0 = r.ref_point();
  CMatrix stacked(n, 0);
  Index used = 0;
  for (Index k = 0; used < n + 1 && k < 8 * (n + 2); ++k) {
    const cplx z{0.37 * (static_cast<double>(k) - 0.5 * static_cast<double>(n)),
                 0.5 + 0.3 * static_cast<double>(k)};
    CMatrix res;
    try {
      res = resolvent(r.op(), z, tol);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NotInResolventSet) throw;
      continue;
    }
    const CMatrix gz = r.gamma() + (z - z0) * (res * r.gamma());
    stacked = linalg::hstack(stacked, gz);
    ++used;
  }
  return Subspace(r.space(), linalg::orth(stacked, tol.rank), tol);
}

bool is_minimal(const Realization& r, const Tolerances& tol) {
  return minimal_subspace(r, tol).dim() == r.dim();
}

KappaEstimate exact_negative_index(const Realization& r, const Tolerances& tol) {
  const Subspace s = minimal_subspace(r, tol);
  KappaEstimate out;
  out.method = KappaMethod::Exact;
  if (s.dim() == 0) return out;
  const Inertia in = subspace_inertia(s, tol.rank);
  if (in.zero > 0)
    throw Error(ErrorCode::DegenerateMinimalSubspace,
                "exact_negative_index: inner product degenerates on the minimal subspace (" +
                    std::to_string(in.zero) + " neutral directions)");
  out.value = in.minus;
  return out;
}

KappaEstimate negative_index(const Realization& r, const SamplerConfig& cfg,
                             const Tolerances& tol) {
  try {
    return exact_negative_index(r, tol);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::DegenerateMinimalSubspace) throw;
  }
  return negative_squares_sampled(GNFunction::from_realization(r), cfg, tol);
}

SymmetryReport check_symmetry(const GNFunction& f, const std::vector<cplx>& points,
                              const Tolerances& tol) {
  SymmetryReport rep;
  for (const cplx z : points) {
    try {
      const CMatrix qz = f(z, tol);
      const CMatrix qc = f(std::conj(z), tol);
      const double scale = std::max(1.0, linalg::norm2(qz));
      rep.max_residual = std::max(rep.max_residual, linalg::norm2(qc.adjoint() - qz) / scale);
      ++rep.evaluated;
    } catch (const Error& e) {
      if (!evaluation_failure(e)) throw;
      ++rep.skipped;
    }
  }
  return rep;
}

CMatrix markov_parameters(const Realization& r) {
  const Index n = r.dim();
  const Index m = r.coeff_dim();
  const CMatrix& a = r.op_matrix();
  const CMatrix gp = r.gamma_plus();
  CMatrix out(m, n * m);
  CMatrix x = r.gamma();
  for (Index k = 0; k < n; ++k) {
    out.middleCols(k * m, m) = gp * x;
    x = a * x;
  }
  return out;
}

PredicateReport injectivity_predicates(const Realization& r, const Tolerances& tol) {
  const Index n = r.dim();
  const Index m = r.coeff_dim();
  const CMatrix gp = r.gamma_plus();
  const double gn = linalg::norm2(r.gamma());
  const double scale = gn * gn * r.space().gram_norm();

  PredicateReport rep;
  rep.gamma_plus_injective = linalg::rank(gp, tol.rank) == n;
  rep.gamma_injective = linalg::rank(r.gamma(), tol.rank) == m;
  rep.gram_product_injective =
      (m == 0) || (scale > 0 && linalg::rank(gp * r.gamma(), tol.rank, scale) == m);
  rep.minimal = is_minimal(r, tol);

  bool ok = !rep.gamma_plus_injective || rep.minimal;
  if (r.form() == Form::Bounded) {
    // Rank of the Markov parameters with A rescaled to unit norm; column
    // scaling of each block does not change the rank.
    const double an = linalg::norm2(r.op_matrix());
    const CMatrix a_scaled = an > 0 ? CMatrix(r.op_matrix() / an) : r.op_matrix();
    CMatrix markov(m, n * m);
    CMatrix x = r.gamma();
    for (Index k = 0; k < n; ++k) {
      markov.middleCols(k * m, m) = gp * x;
      x = a_scaled * x;
    }
    const bool sep =
        (m == 0) || (scale > 0 && linalg::rank(markov, tol.rank, scale) == m);
    rep.separating = sep;
    ok = ok && (!rep.gram_product_injective || sep);
    ok = ok && (!sep || rep.gamma_injective);
    ok = ok && (!(rep.minimal && rep.gamma_injective) || sep);
  }
  rep.implications_hold = ok;
  return rep;
}

}  // namespace pkit
