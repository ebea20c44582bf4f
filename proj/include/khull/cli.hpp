#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace khull::cli {

/// Exit codes of `run`.
inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;
inline constexpr int kInvalid = 2;
inline constexpr int kCheckFailed = 3;

/// args excludes the program name. Outputs go to files named by --out
/// (written to a temporary sibling, then renamed) or to `out`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Writes `contents` to path via a temporary file and rename.
void write_atomic(const std::string& path, const std::string& contents);

}  // namespace khull::cli
