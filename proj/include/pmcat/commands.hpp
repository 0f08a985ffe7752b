#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pmcat {

inline constexpr int kExitPass = 0;
inline constexpr int kExitPropertyFailed = 1;
inline constexpr int kExitInvalidInput = 2;

/// Runs one subcommand (`args` excludes the program name). Reports go to `out`,
/// diagnostics and usage text to `err`. Returns 0 when every check passes, 1 when a
/// checked property fails and 2 for invalid input or usage.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pmcat
