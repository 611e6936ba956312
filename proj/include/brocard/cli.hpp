#pragma once

// The `brocard` command line: every library operation as a subcommand,
// JSON (or CSV) on stdout or to a file.

#include <iosfwd>
#include <string>
#include <vector>

namespace brocard {

/// Exit status: 0 success, 1 Unknown-dominated report or failed check
/// (also runtime limits), 2 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace brocard
