#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ldpower {

enum ExitCode : int { exit_ok = 0, exit_usage = 1, exit_data = 2, exit_resource = 3 };

// Runs one command line (args excludes the program name). Tables go to `out` unless
// --out is given; diagnostics and --progress logging go to `err`.
int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace ldpower
