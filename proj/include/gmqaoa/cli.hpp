#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gmqaoa {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitMismatch = 1,  ///< an oracle contradicted a prediction
  kExitInput = 2,     ///< parse or validation error
  kExitCap = 3,       ///< instance exceeds an oracle cap
};

/// Runs the CLI with `args` (without the program name). Reports go to `out`
/// unless --out is given; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gmqaoa
