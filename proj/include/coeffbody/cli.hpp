#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace coeffbody {

enum ExitCode : int {
    kExitPass = 0,
    kExitIdentityFailure = 1,
    kExitInvalidInput = 2,
    kExitNumericalFailure = 3,
};

/// Runs the command line (without the program name). Output goes to `out`
/// unless --output names a file; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace coeffbody
