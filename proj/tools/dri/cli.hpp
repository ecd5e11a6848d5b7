#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "dri/common/error.hpp"

namespace dri::cli {

enum ExitCode : int {
  kOk = 0,
  kInputError = 2,
  kExtractionFailures = 3,
  kDegenerateCorpus = 4,
  kTransport = 5,
};

int exit_code_for(ErrorCode code) noexcept;

// Runs one `dri` invocation. `args` excludes the program name. Summary lines
// go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dri::cli
