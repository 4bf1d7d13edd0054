#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace opchain::cli {

// Exit codes: 0 all assertions passed, 2 assertion failure, 3 usage or parse error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 2;
inline constexpr int kExitUsage = 3;

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace opchain::cli
