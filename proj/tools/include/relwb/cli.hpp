#pragma once

// The relwb command line, callable in-process. Exit codes: 0 when a verdict
// was computed (negative verdicts included), 1 for input, file or parse
// errors, 2 for usage errors, 3 when a search exhausted its budget and 4 when
// an internal invariant check failed.

#include <iosfwd>
#include <string>
#include <vector>

namespace relwb::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitBudget = 3;
inline constexpr int kExitInvariant = 4;

/// `args` excludes the program name.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace relwb::cli
