#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace qstep::cli {

inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode : int { kOk = 0, kUsage = 2, kNumerical = 3 };

struct RunManifest {
  std::string command;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::string tool_version = kToolVersion;
  std::string timestamp;  // empty when suppressed
};

/// `#`-prefixed comment block, one key per line.
std::string csv_header(const RunManifest& m);

/// Runs the command line (args[0] is the program name). Reports go to `out`,
/// error objects to `err`; the return value is the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qstep::cli
