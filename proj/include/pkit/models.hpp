#pragma once

// Small hand-checkable realizations used by the tests and the CLI.

#include "pkit/nevanlinna.hpp"

namespace pkit::models {

/// J = I2 (+) [[0,1],[1,0]], A with a single 1 at (3,4), Gamma0 = [I2; [[0,1],[1,0]]].
/// Q(z) = -[[1/z + 1/z^2, 1/z], [1/z, 1/z]].
Realization example1();

/// Closed form of example1's Q.
CMatrix example1_closed_form(cplx z);

/// The two printed components of example1: Q1 = -I/z and Q2.
Realization example1_first();
Realization example1_second();

/// J = A = diag(1, -1), Gamma0 = I: Q(z) = diag(1/(1-z), 1/(1+z)).
Realization diag_model();

/// J = [[0,1],[1,0]], A = [[0,1],[0,0]], Gamma0 = scale * I: Q(z) = scale^2 J (A - z)^{-1}.
Realization jordan_model(double scale = 1.0);

/// J = diag(1,1,-1), A = [[0,0,1],[0,2,0],[-1,0,-3]], Gamma0 = [e1 e2]. The
/// inverse has Qhat2(z) = [[1/(3+z), 0], [0, 0]] with one negative square.
Realization coupled_model();

/// Scalar realization of q(z) = sign / (a - z) with J = [sign].
Realization scalar_pole_model(double a, double sign);

}  // namespace pkit::models
