#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace voltfx {

enum ExitStatus : int { kExitOk = 0, kExitDomain = 1, kExitUsage = 2 };

/// Runs one CLI invocation. `args` excludes the program name.
int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace voltfx
