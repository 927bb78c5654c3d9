#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace logicbench::cli {

enum ExitCode : int { Ok = 0, Defect = 1, Usage = 2, Undecided = 3 };

/// Runs one command line (args excludes the program name). Results go to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace logicbench::cli
