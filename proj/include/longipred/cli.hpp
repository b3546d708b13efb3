#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace longipred {

/// Exit codes: 0 success, 1 fatal config/data error, 2 total experiment failure.

/// Generates the synthetic cohort CSV and prints its transition matrix.
/// Without a config, generator defaults are used.
int cmd_synth(const std::optional<std::string>& config_path, const std::string& out_path,
              std::optional<std::uint64_t> seed_override);

/// Runs the configured experiment and writes the report files.
int cmd_run(const std::string& config_path, const std::optional<std::string>& out_dir,
            std::optional<std::uint64_t> seed_override, std::optional<int> jobs_override);

/// Dry-run diagnostics: schema, strata sizes, min_occurrences feasibility,
/// model/feature compatibility. No training.
int cmd_validate(const std::string& config_path);

}  // namespace longipred
