#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bdi {

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kValidationErrors = 1;
inline constexpr int kInputError = 2;   // unreadable or unparsable input
inline constexpr int kActionFailure = 3;
inline constexpr int kUsage = 4;        // bad subcommand, flag, CQ id or parameter
}  // namespace exit_code

struct CliEnv {
  bool color = false;
};

/// Entry point behind the `bdi` executable. `args` excludes the program name.
/// Data goes to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const CliEnv& env = {});

}  // namespace bdi
