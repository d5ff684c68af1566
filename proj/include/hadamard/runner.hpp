#pragma once

// Batch runner behind the `lab` executable. A run is a command name plus a
// flat JSON configuration; see README.md for the keys.

#include "hadamard/report.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace hadamard {

enum ExitCode : int { kExitPass = 0, kExitViolation = 1, kExitUsage = 2 };

const std::vector<std::string>& command_names();

/// Reads a JSON object from disk.
Json load_config(const std::string& path);

/// flags > LAB_SEED > config file. `env_seed` is the raw LAB_SEED value, if set.
Json merge_config(const Json& file, const Json& flags, std::optional<std::string> env_seed);

struct RunResult {
  int exit_code = kExitUsage;
  std::string verdict;  // pass | violation | violation-as-expected | unexpected-pass
  Json report;
  std::vector<std::string> outputs;
};

/// Runs one command and writes `<prefix>.csv` and `<prefix>.json` (plus
/// command-specific sample files) into the configured output directory.
/// Library and validation errors propagate as LabError.
RunResult execute(const std::string& command, const Json& config);

/// execute() with errors mapped to exit code 2 and a diagnostic on `err`;
/// a short summary goes to `out`.
int run(const std::string& command, const Json& config, std::ostream& out, std::ostream& err);

}  // namespace hadamard
