#pragma once

#include <string>
#include <vector>

namespace omega::cli {

enum ExitCode { kYes = 0, kNo = 1, kUnknown = 2, kInputError = 3 };

struct Outcome {
  int exit_code = kYes;
  std::string out;
  std::string err;
};

/// Runs one omega-card command; args exclude the program name.
Outcome run(const std::vector<std::string>& args);

}  // namespace omega::cli
