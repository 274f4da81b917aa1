#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lopsim::cli {

// Runs one CLI invocation; args excludes the program name. Returns the
// process exit code: 0 success, 1 usage error, 2 circuit parse/semantic
// error, 3 numerical validation failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lopsim::cli
