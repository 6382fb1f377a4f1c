#include <iostream>
#include <string>
#include <vector>

#include "drum/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  const auto result = drum::cli::run(args);
  if (!result.machineRecord.empty()) {
    std::cout << result.machineRecord;
    if (result.exitCode != 0) std::cerr << result.humanText;
  } else if (result.exitCode == drum::cli::kOk || result.exitCode == drum::cli::kVerificationFailed) {
    std::cout << result.humanText;
  } else {
    std::cerr << result.humanText;
  }
  return result.exitCode;
}
