// cli.hpp — command-line driver, callable in-process for testing
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ptkit::cli {

// argv without the program name. Returns 0 on success, 1 on usage error,
// 2 on computation error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ptkit::cli
