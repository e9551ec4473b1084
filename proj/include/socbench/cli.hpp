#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace socbench::cli {

inline constexpr int kExitOk = 0;
/// The command ran but its verdict is negative (failed compliance, recall below 1).
inline constexpr int kExitCheckFailed = 1;
/// Bad usage, unreadable or inconsistent input. Nothing is written to `out`.
inline constexpr int kExitInputError = 2;

/// Runs the command line `args` (without the program name). Reports go to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace socbench::cli
