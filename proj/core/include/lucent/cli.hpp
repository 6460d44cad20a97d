#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lucent::cli {

inline constexpr const char* version = "0.1.0";

/// Command-line front end. args excludes the program name.
/// Exit codes: 0 analysis ran (verdicts are in the report), 1 usage error,
/// 2 input error, 3 state space exceeded the cap.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lucent::cli
