#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fusionlab::cli {

/// Runs the fusionlab command line on `args` (without the program name).
/// Returns 0 on success, 2 on usage errors and 1 on computation errors;
/// the report goes to `out` and diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fusionlab::cli
