#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace walkdist::cli {

enum ExitCode : int {
    kOk = 0,
    kCheckFailed = 1,
    kInvalidInput = 2,
    kNumericalFailure = 3,
};

/// Runs one command line (without the program name). Results go to `out`
/// unless --output is given; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace walkdist::cli
