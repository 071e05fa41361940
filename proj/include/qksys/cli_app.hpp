#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qksys {

// Run one CLI invocation programmatically. args excludes the program name;
// input documents come from `in` when --in is absent or "-". Returns the
// process exit code: 0 success, 1 audit failure, 2 bad parameters,
// 3 malformed input, 4 budget exhausted (the partial result is still
// emitted).
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err);

}  // namespace qksys
