#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace scpoly {

enum ExitCode : int {
    kExitOk = 0,
    kExitValidation = 2,
    kExitNumerical = 3,
    kExitNoConvergence = 4,
};

/// Entry point of the scpoly command line. `args` includes the program name.
/// Payloads go to `out` (or the --output file), JSON error bodies to `err`.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace scpoly
