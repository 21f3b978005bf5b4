#pragma once

#include <iosfwd>

namespace gammamaps::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kInputError = 1;
inline constexpr int kUnsolvable = 2;

/// Runs one subcommand. argv[0] is the program name. The report goes to `out`
/// (or to --out), diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gammamaps::cli
