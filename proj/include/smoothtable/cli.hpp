#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace smoothtable::cli {

// Exit codes: 0 success, 1 unexpected failure, 2 bad arguments, 3 resource guard.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitResource = 3;

// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace smoothtable::cli
