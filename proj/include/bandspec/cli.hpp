#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bandspec::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitVerifyFailed = 2;

/// Entry point of the `bandspec` tool; args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bandspec::cli
