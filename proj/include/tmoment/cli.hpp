#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace tmoment::cli {

// Exit codes: 0 measure found / success, 1 input error, 2 certified no
// measure, 3 inconclusive.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace tmoment::cli
