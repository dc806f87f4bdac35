#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace deltakit::cli {

/// Environment variable naming a directory that relative --out paths (and
/// the default per-command file) are placed in.
inline constexpr const char* kOutDirEnv = "DELTAKIT_OUT_DIR";

/// Runs one invocation; args[0] is the program name. CSV goes to the
/// --out file, or to `out` when no file is selected. Returns the exit
/// status: 0 on success, 1 on a failed suite or runtime error, 2 on a
/// malformed command line or config.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Shortest round-trip decimal form of x.
std::string formatDouble(double x);

}  // namespace deltakit::cli
