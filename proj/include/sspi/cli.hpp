#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sspi {

// Exit codes shared by every subcommand.
inline constexpr int kExitPass = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitResourceCap = 3;

// Runs one CLI invocation; args excludes the program name. Reports go to out
// as a single JSON document, diagnostics to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace sspi
