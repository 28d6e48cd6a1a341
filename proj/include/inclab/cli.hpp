#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace inclab::cli {

/// Exit codes of `run`.
inline constexpr int kOk = 0;
inline constexpr int kUsage = 2;      // bad arguments, invalid input, I/O errors
inline constexpr int kInvariant = 3;  // a checked property failed

/// Runs one subcommand. `args` excludes the program name. Reports go to
/// `out` (or the --out file); diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace inclab::cli
