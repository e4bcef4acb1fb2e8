#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hardy::cli {

inline constexpr const char* kToolVersion = "0.1.0";

/// Runs the command line `args` (args[0] is the program name). JSON or CSV goes to `out`,
/// diagnostics to `err`. Returns 0 on success, 1 if a check failed or a computation did not
/// converge, 2 on bad or inadmissible input.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses "1e-2,1e-3" into numbers; throws Error(InvalidArgument) on any malformed literal.
std::vector<double> parse_list(const std::string& text);

}  // namespace hardy::cli
