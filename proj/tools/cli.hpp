#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wss::cli {

// Exit codes: 0 success, 1 domain/validation failure, 2 usage/parse error.
inline constexpr int kOk = 0;
inline constexpr int kDomainFailure = 1;
inline constexpr int kUsageError = 2;

/// Runs the wssgame command line with `args` (program name excluded).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wss::cli
