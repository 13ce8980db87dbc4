#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fpic::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kIoError = 1,       ///< unreadable/unwritable file, malformed image or container
  kInvalidArgs = 2,   ///< bad flags or parameters outside their domain
};

/// Runs one subcommand. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fpic::cli
