#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace uag::cli {

/// Exit codes.
enum Exit : int { ok = 0, parse_error = 1, semantic_error = 2, budget_error = 3, internal_error = 4 };

/// Runs one `uag` command line (args[0] is the program name). Results go to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace uag::cli
