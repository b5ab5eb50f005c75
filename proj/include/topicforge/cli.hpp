#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace topicforge {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

/// Entry point of the topicforge command-line tool.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace topicforge
