#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hypcomm::cli {

/// Runs one command line.  Exit codes: 0 success, 1 precondition or parse
/// error, 2 certificate verification mismatch, 3 search exhausted.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

/// Convenience overload; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hypcomm::cli
