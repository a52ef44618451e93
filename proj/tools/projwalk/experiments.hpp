#pragma once

#include <string>

#include "config.hpp"

namespace projwalk::cli {

inline constexpr const char* kCodeVersion = "0.1.0";

// Runs the named experiment, writes its outputs and manifest.json under the
// config's output directory, and returns the number of output files.
int run_experiment(const ExperimentConfig& config);

// Dry-run checks: files exist, parameters in range, ensemble loads and passes
// its invariants. Throws ConfigError / FormatError on the first problem.
void validate_experiment(const ExperimentConfig& config);

// FNV-1a 64-bit file checksum in hex, as recorded in manifests.
std::string file_checksum(const std::string& path);

}  // namespace projwalk::cli
