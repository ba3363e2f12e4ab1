#pragma once

#include <ostream>
#include <span>
#include <string>

namespace isoflat {

// Runs one subcommand. `args` excludes the program name. Output goes to
// `out` only when the command succeeds; failures print one line to `err`
// and return a nonzero status.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace isoflat
