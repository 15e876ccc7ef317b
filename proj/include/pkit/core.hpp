#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace pkit {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Failure categories surfaced by the library. The CLI maps them onto exit codes.
enum class ErrorCode {
  InvalidArgument,
  DimensionMismatch,
  NotHermitian,
  DegenerateSubspace,
  DegenerateMinimalSubspace,
  NotInResolventSet,
  SingularValue,
  GramProductSingular,
  SchurSingular,
  NotInvariant,
  NotMinimal,
  NotEigenvalue,
  ProjectorNotJSymmetric,
  NoGenerator,
  Parse,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Numerical thresholds. All are relative unless noted.
struct Tolerances {
  /// SVD rank, inertia sign and degeneracy decisions.
  double rank = 1e-9;
  /// Reciprocal condition number below which a matrix is treated as
  /// singular when it has to be inverted (resolvents, Q(z)^{-1}).
  double singular = 1e-13;
  /// Projector distance under which two subspaces are considered equal.
  double subspace = 1e-8;
  /// ||(I-E) A E|| <= invariance * ||A|| for an invariant subspace.
  double invariance = 1e-9;

  /// Defaults, with `rank` overridden by the PKIT_TOL environment variable
  /// when it is set to a positive number.
  static Tolerances from_env();
};

}  // namespace pkit
