#ifndef HLBM_TOOLS_COMMANDS_HPP_
#define HLBM_TOOLS_COMMANDS_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace hlbm::cli {

enum ExitCode : int { kOk = 0, kFailed = 1, kUsage = 2 };

// hlbm <equations|verify|solve|shock-tube|export> [options]
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::string version();

}  // namespace hlbm::cli

#endif  // HLBM_TOOLS_COMMANDS_HPP_
