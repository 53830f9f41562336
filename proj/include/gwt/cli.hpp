#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gwt::cli {

/// Entry point shared by the executable and the tests; args exclude argv[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gwt::cli
