#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qck::cli {

/// 0: success, 1: an asserted identity left a nonzero residual, 2: usage or parse error.
enum ExitStatus : int { ok = 0, check_failed = 1, usage_error = 2 };

/// Runs one invocation; args excludes the program name. EXPR "-" reads `in`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::istream& in);

} // namespace qck::cli
