#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace synrep {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDataError = 1;
inline constexpr int kExitUsage = 2;

/// Runs the `synrep` command line. `args` excludes the program name.
/// Structured output goes to `out` as JSON lines, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace synrep
