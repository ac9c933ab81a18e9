#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pdmeans::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kOk = 0,
  kChecksFailed = 1,  // verify found violations or solver failures; also I/O errors
  kParseError = 2,    // malformed input file or command line
  kDomainError = 3,   // parameter or matrix outside the operation's domain
  kSolverError = 4,   // fixed-point solver or eigensolver did not converge
};

/// Runs the command line `args` (without the program name), writing results
/// to `out` and messages to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, char** argv);

}  // namespace pdmeans::cli
