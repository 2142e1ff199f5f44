#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mosrank {

// Exit statuses of run_cli.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitDegenerate = 2;

// Environment variable that overrides the default --format.
inline constexpr const char* kFormatEnvVar = "MOSRANK_FORMAT";

// Runs the command line (arguments without the program name). The result
// document goes to `out` unless --output is given; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mosrank
