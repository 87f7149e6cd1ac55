#pragma once

#include <string>
#include <vector>

namespace qmf::cli {

/* Exit code contract: 0 pass, 1 mathematical failure, 2 usage error,
 * 3 resource/budget error. */
int run(int argc, const char* const* argv);
int run(const std::vector<std::string>& args);    // args without the program name

} // namespace qmf::cli
