#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ctxmine {

/// Environment variable naming the directory that relative output paths are
/// resolved against.
inline constexpr const char* kOutputDirEnv = "CTXMINE_OUTPUT_DIR";

/// Runs the command line `args` (args[0] is the program name). Returns 0 on
/// success, 1 for input or configuration errors, 2 for internal invariant
/// violations.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace ctxmine
