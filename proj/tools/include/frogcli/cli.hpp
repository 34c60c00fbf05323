#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace frogcli {

/// Exit codes of the frogcert tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainError = 1;
inline constexpr int kExitInconclusive = 2;

/// Runs the tool on `args` (without the program name), writing results to
/// `out` and diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace frogcli
