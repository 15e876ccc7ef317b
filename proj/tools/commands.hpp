#pragma once

// Command implementations behind the pkit executable. Each writes its report
// to `out` and returns the process exit code; library errors propagate.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pkit/core.hpp"
#include "pkit/fuzz.hpp"

namespace pkit::cli {

enum Exit : int { Ok = 0, ParseFailure = 1, DomainFailure = 2, PreconditionFailure = 3 };

/// Exit code for a library error.
int exit_code(ErrorCode code);

/// "RE,IM" or "RE"; throws Error(Parse) otherwise.
cplx parse_complex(const std::string& text);

int cmd_inspect(const std::string& file, const Tolerances& tol, std::ostream& out);
int cmd_eval(const std::string& file, cplx z, const Tolerances& tol, std::ostream& out);
int cmd_invert(const std::string& file, const std::vector<cplx>& points, const Tolerances& tol,
               std::ostream& out);
int cmd_decompose(const std::string& file, const std::string& subspace_file,
                  const Tolerances& tol, std::ostream& out);
int cmd_jordan(const std::string& file, double alpha, const Tolerances& tol, std::ostream& out);
int cmd_fuzz(const fuzz::Options& options, const Tolerances& tol, std::ostream& out);
int cmd_example1(const Tolerances& tol, std::ostream& out);

}  // namespace pkit::cli
