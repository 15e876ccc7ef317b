#pragma once

// Linear relations (multivalued operators) in a Pontryagin space. A relation
// is the subspace {(M c, N c)} of K (+) K generated by a pair of matrices.

#include "pkit/pontryagin.hpp"

namespace pkit {

class LinearRelation {
 public:
  /// Generators are compressed to a basis of their span when the stacked
  /// matrix [M; N] is column-rank deficient.
  LinearRelation(PontryaginSpace space, CMatrix m, CMatrix n, const Tolerances& tol = {});

  const PontryaginSpace& space() const { return space_; }
  const CMatrix& domain_part() const { return m_; }
  const CMatrix& value_part() const { return n_; }
  Index dim() const { return space_.dim(); }
  /// Dimension of the relation as a subspace of K (+) K.
  Index generators() const { return m_.cols(); }

  /// [M; N].
  CMatrix stacked() const;

 private:
  PontryaginSpace space_;
  CMatrix m_;
  CMatrix n_;
};

/// Graph {(c, T c)}.
LinearRelation from_operator(const CMatrix& t, const PontryaginSpace& space);

/// {(x, y) : [y, u] = [x, v] for all (u, v) in R}.
LinearRelation adjoint_relation(const LinearRelation& r, const Tolerances& tol = {});

/// Subspace equality in K (+) K, compared through Euclidean projectors.
bool same_relation(const LinearRelation& a, const LinearRelation& b,
                   const Tolerances& tol = {});

bool is_selfadjoint_relation(const LinearRelation& r, const Tolerances& tol = {});

/// Basis of R(0) = {h : (0, h) in R}.
Subspace multivalued_part(const LinearRelation& r, const Tolerances& tol = {});

/// (R - z)^{-1}: the everywhere defined operator with T (N c - z M c) = M c.
/// Throws NotInResolventSet when c -> (N - z M) c is not onto or the induced
/// map is multivalued.
CMatrix resolvent(const LinearRelation& r, cplx z, const Tolerances& tol = {});

/// True when `resolvent` succeeds at z.
bool in_resolvent_set(const LinearRelation& r, cplx z, const Tolerances& tol = {});

/// {(k1 [+] k2, h1 [+] h2) : (ki, hi) in Ri}.
LinearRelation relation_direct_sum(const LinearRelation& a, const LinearRelation& b);

/// The relation whose resolvent at z0 is `t`: {(t y, y + z0 t y)}.
LinearRelation from_resolvent(const CMatrix& t, cplx z0, const PontryaginSpace& space);

/// True when the relation is the graph of an everywhere defined operator;
/// the operator is returned through `op` when non-null.
bool is_operator_graph(const LinearRelation& r, CMatrix* op = nullptr,
                       const Tolerances& tol = {});

}  // namespace pkit
