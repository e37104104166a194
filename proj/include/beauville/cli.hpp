#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bvl {

/// Runs one CLI invocation.  Exit codes: 0 success / verified, 1 failed
/// verification or a negative result where a positive one was requested,
/// 2 invalid input.  JSON mode writes exactly one document to `out`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bvl
