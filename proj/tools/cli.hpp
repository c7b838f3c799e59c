#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace flexgraph::cli {

/// Runs one command line (without the program name). Documents go to `out`,
/// diagnostics to `err`. Returns 0 on success, 1 for domain errors and 2 for
/// usage, parse or I/O errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace flexgraph::cli
