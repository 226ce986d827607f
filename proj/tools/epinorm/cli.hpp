#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace epinorm::cli {

/// Process exit codes shared by every subcommand.
enum ExitCode : int { kOk = 0, kWarnings = 1, kErrors = 2 };

/// Runs one command line (args[0] is the program name). Data goes to `out`
/// or --output, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace epinorm::cli
