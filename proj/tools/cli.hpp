#ifndef ZARISKI_TOOLS_CLI_HPP
#define ZARISKI_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace zariski::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

/// Runs one CLI invocation; `args` excludes the program name.
/// Returns 0 on success, 1 on domain errors, 2 on usage or schema errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace zariski::cli

#endif  // ZARISKI_TOOLS_CLI_HPP
