#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pstlab::cli {

// Exit codes besides the check verdicts 0 (Perfect), 1 (NoTransfer) and
// 2 (Undecided). Values follow sysexits.h.
inline constexpr int kExitUsage = 64;
inline constexpr int kExitParse = 65;
inline constexpr int kExitNoInput = 66;
inline constexpr int kExitInternal = 70;

// Runs the tool with args (program name excluded). Nothing reaches out unless
// the command completes; diagnostics go to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pstlab::cli
