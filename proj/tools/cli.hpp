#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace steinhaus::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int { kSuccess = 0, kNegative = 1, kUsage = 2 };

inline constexpr int kSchemaVersion = 1;

/// Runs one command line (args excludes the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace steinhaus::cli
