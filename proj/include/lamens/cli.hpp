#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lamens {

/// Runs one CLI invocation (args exclude the program name). Returns 0 on
/// success; on failure prints a one-line JSON error record to err and returns
/// 2 for usage errors, 1 otherwise.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lamens
