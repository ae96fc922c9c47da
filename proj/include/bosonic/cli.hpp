#pragma once

#include <ostream>

namespace bosonic {

inline constexpr const char* kOutputDirEnv = "BOSONIC_OUTPUT_DIR";

/// Exit status: 0 success, 1 computational failure, 2 usage or data error.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace bosonic
