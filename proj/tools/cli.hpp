#pragma once

#include <iosfwd>

namespace qhash::cli {

enum ExitCode : int {
  kOk = 0,
  kRuntimeError = 1,
  kUsageError = 2,
  kInvalidCombination = 3,
  kInfeasible = 4,
  kIoError = 5,
  kNoPreimages = 6,
};

// Entry point of the qhash tool. Tables go to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qhash::cli
