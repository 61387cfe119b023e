#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace bsrd {

/// Exit codes: 0 success, 1 validation or configuration error, 2 failed
/// verification suite.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitSuiteFailed = 2;

int cli_dispatch(int argc, char** argv);

/// Same as cli_dispatch; `args` excludes the program name.
int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bsrd
