#pragma once

// Dense helpers shared by every module. Rank decisions are SVD based.

#include <vector>

#include "pkit/core.hpp"

namespace pkit::linalg {

/// Largest singular value; 0 for empty matrices.
double norm2(const CMatrix& m);

RVector singular_values(const CMatrix& m);

/// Numerical rank: singular values above tol * max(sigma_max, scale).
Index rank(const CMatrix& m, double tol, double scale = 0.0);

/// Orthonormal basis of the column space.
CMatrix orth(const CMatrix& m, double tol, double scale = 0.0);

/// Orthonormal basis of the right null space.
CMatrix null_space(const CMatrix& m, double tol, double scale = 0.0);

/// Moore-Penrose pseudo-inverse with the same truncation rule.
CMatrix pinv(const CMatrix& m, double tol);

/// Euclidean orthogonal projector onto the column space of `basis`.
CMatrix range_projector(const CMatrix& basis, double tol);

/// Spectral distance between Euclidean projectors onto two column spaces.
/// Spaces of different dimension have distance 1.
double subspace_distance(const CMatrix& a, const CMatrix& b, double tol);

/// Solves m x = rhs; throws `code` when the reciprocal condition estimate of
/// m is at or below `rcond_min`.
CMatrix solve(const CMatrix& m, const CMatrix& rhs, double rcond_min,
              ErrorCode code, std::string_view what);

CMatrix inverse(const CMatrix& m, double rcond_min, ErrorCode code,
                std::string_view what);

/// ||m - m^*|| relative to ||m||.
double hermitian_defect(const CMatrix& m);

CMatrix hermitian_part(const CMatrix& m);

/// Block-diagonal [a 0; 0 b].
CMatrix block_diag(const CMatrix& a, const CMatrix& b);

/// Vertical stack [a; b].
CMatrix vstack(const CMatrix& a, const CMatrix& b);

/// Horizontal stack [a b].
CMatrix hstack(const CMatrix& a, const CMatrix& b);

CMatrix identity(Index n);

/// Generalized kernel of a square matrix by staircase reduction:
/// V_1 = ker m, V_{k+1} = {x : m x in V_k}, until the dimension stops growing.
struct Staircase {
  CMatrix basis;            // orthonormal basis of the last V_k
  std::vector<Index> dims;  // dim V_1 < dim V_2 < ...
};
Staircase generalized_kernel(const CMatrix& m, double tol, double scale = 0.0);

}  // namespace pkit::linalg
