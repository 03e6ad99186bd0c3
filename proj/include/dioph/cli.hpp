#ifndef DIOPH_CLI_HPP
#define DIOPH_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace dioph {

// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,
  kExitPartial = 3,
  kExitUnresolved = 4,
};

// Environment variable overriding the default precision.
inline constexpr const char* kPrecisionEnv = "DIOPH_PRECISION";

// Runs the tool on `args` (without the program name). Results go to `out`
// unless --output names a file; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace dioph

#endif  // DIOPH_CLI_HPP
