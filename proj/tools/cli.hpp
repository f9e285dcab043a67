#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace placenet::cli {

enum ExitCode : int { ok = 0, usage = 1, data = 2, numerical = 3 };

// Entry point shared by the executable and the tests. args excludes argv[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace placenet::cli
