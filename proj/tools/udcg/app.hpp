#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace udcg::cli {

// Parses args (without the program name) and runs the selected command.
// Returns the process exit status: 0 on success, 2 for usage errors, 1 for
// everything else.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace udcg::cli
