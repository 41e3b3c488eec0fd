#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace codiv::cli {

inline constexpr const char *kVersion = "0.1.0";

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kResource = 3,
  kPrecision = 4,
  kVerificationFailed = 5,
};

/// Runs one invocation; `args` excludes the program name.
int run(const std::vector<std::string> &args, std::ostream &out,
        std::ostream &err);

} // namespace codiv::cli
