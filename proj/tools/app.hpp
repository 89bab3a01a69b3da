#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace decosim::app {

/// Runs the decosim command line given argv-style arguments (program name
/// excluded). Writes normal output to `out` and diagnostics to `err`.
/// Returns the process exit code: 0 success, 1 usage/scenario error, 2
/// runtime failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace decosim::app
