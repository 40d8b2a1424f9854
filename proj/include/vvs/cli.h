#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace vvs {

// Entry point of the `vvs` tool. Returns 0 on success, 1 on input errors
// (bad flags, missing or malformed files) and 2 when an internal invariant
// fails.
int cli_main(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err);

}  // namespace vvs
