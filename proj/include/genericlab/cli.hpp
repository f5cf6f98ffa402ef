#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace genericlab {

// Batch front end. Exit codes: 0 success, 1 precondition failure,
// 2 I/O or parse error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace genericlab
