#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tmdyn::cli {

enum ExitCode : int {
  kOk = 0,
  kValidationError = 1,
  kDivergence = 2,
  kCompareFailed = 3,
};

/// Full command-line dispatch. Regular output goes to `out`; diagnostics
/// (one `level=... code=... msg=...` line per event) go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tmdyn::cli
