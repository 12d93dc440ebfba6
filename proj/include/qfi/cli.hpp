#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qfi::cli {

// Parses argv (without the program name), runs the subcommand, writes the
// report as a single JSON line to out. Errors go to err as one JSON object.
// Exit codes: 0 success, 1 input/parse error, 2 failed certificate.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qfi::cli
