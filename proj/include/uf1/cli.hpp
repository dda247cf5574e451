// The uf1 command line, callable in-process for tests.
#pragma once

#include <iostream>
#include <string>
#include <vector>

namespace uf1 {

// Exit codes.
enum : int { kExitYes = 0, kExitNo = 1, kExitUsage = 2, kExitRefused = 3, kExitBudget = 4 };

// args excludes the program name. A file argument of "-" reads `in`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::istream& in = std::cin);

}  // namespace uf1
