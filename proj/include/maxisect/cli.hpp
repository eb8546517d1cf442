#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace maxisect::cli {

// Process exit codes.
inline constexpr int kOk = 0;
inline constexpr int kMismatch = 1;
inline constexpr int kInputError = 2;
inline constexpr int kBudgetRefused = 3;

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics to `err`; the return value is the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace maxisect::cli
