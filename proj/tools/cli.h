#ifndef CDT_TOOLS_CLI_H_
#define CDT_TOOLS_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace cdt {

// Exit codes of the command-line front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitAuditFailed = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitNoConvergence = 3;
inline constexpr int kExitGuard = 4;
inline constexpr int kExitUsage = 64;

// args excludes the program name.
int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cdt

#endif  // CDT_TOOLS_CLI_H_
