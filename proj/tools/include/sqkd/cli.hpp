#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sqkd {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNumeric = 2;

// args excludes the program name. Errors go to err as one line
// "error: <reason>: <message>".
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sqkd
