#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hq {

/// Runs one command; args exclude the program name. Reports go to out and
/// diagnostics to err. Returns 0 on success, 1 on a computation error (or a
/// failed check such as a violated construction bound) and 2 on a usage
/// error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hq
