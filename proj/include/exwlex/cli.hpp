#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace exwlex {

/// Runs one exwlex command line (args exclude the program name). The JSON
/// report goes to `out`, usage errors to `err`. Returns the exit code:
/// 0 pass, 1 a verdict failed, 2 input or validation error, 3 budget.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace exwlex
