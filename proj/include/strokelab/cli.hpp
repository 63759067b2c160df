#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace strokelab::cli {

// Entry point of the `strokelab` tool: `analyze` and `simulate` subcommands.
// args[0] is the program name. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace strokelab::cli
