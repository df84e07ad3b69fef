#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sandpile::cli {

enum ExitCode : int {
  kOk = 0,
  kNotRecurrent = 1,
  kBadInput = 2,
  kLimitExceeded = 3,
};

// args excludes the program name. `in` is read by subcommands whose
// positional input is omitted.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace sandpile::cli
