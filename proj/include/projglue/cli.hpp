#pragma once

#include <ostream>

namespace projglue::cli {

// Runs one subcommand. JSON goes to `out`, a short summary to `err`.
// Exit codes: 0 all checks passed, 1 a mathematical check failed, 2 usage,
// input or IO error (with a JSON error object on `out`).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace projglue::cli
