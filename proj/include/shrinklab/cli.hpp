#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace shrinklab {

// Exit codes of the command-line front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;  // a verification or check failed
inline constexpr int kExitUsage = 2;   // bad arguments or unreadable input

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace shrinklab
