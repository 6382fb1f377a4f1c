#pragma once

#include <string>
#include <vector>

namespace drum::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kOk = 0,
  kVerificationFailed = 1,
  kUsageError = 2,
  kResourceError = 3,
};

struct CommandResult {
  int exitCode = kOk;
  std::string humanText;
  std::string machineRecord;  // JSON with "schema": 1; empty unless --json
};

/// Runs one invocation. `args` excludes the program name. Never throws;
/// library errors become exit codes 2 or 3 with a message in humanText.
CommandResult run(const std::vector<std::string>& args);

/// FNV-1a 64-bit digest in hex, used for fixture provenance hashes.
std::string fingerprint(const std::string& bytes);

}  // namespace drum::cli
