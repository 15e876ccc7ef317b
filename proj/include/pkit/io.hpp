#pragma once

// JSON problem files. Complex scalars are numbers or [re, im] pairs, matrices
// are row-major nested arrays, relations are {"M": ..., "N": ...}.

#include <string>

#include "pkit/nevanlinna.hpp"

namespace pkit::io {

struct ProblemFile {
  std::string name;
  std::string description;
  Realization realization;
};

/// Throws Error(Parse) on malformed JSON, shape errors (with row/column
/// context) and on data that does not form a valid realization.
ProblemFile parse_problem(const std::string& text, const Tolerances& tol = {});
ProblemFile read_problem(const std::string& path, const Tolerances& tol = {});

/// Canonical text: fixed key order, one matrix row per line, real entries as
/// plain numbers, shortest round-trip formatting.
std::string write_problem(const ProblemFile& problem);

/// Subspace file: {"basis": matrix} with the spanning vectors as columns.
Subspace parse_subspace(const std::string& text, const PontryaginSpace& space,
                        const Tolerances& tol = {});
Subspace read_subspace(const std::string& path, const PontryaginSpace& space,
                       const Tolerances& tol = {});

std::string read_text(const std::string& path);

/// "%.15g"-style rendering used by every report: "a", "a+bi" or "a-bi".
std::string format_complex(cplx v);
std::string format_real(double v);

}  // namespace pkit::io
