#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qspacing::cli {

/// Runs one command line (without the program name) and returns the exit code.
/// Reports go to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qspacing::cli
