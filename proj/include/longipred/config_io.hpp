#pragma once

#include <filesystem>

#include <json.hpp>

#include "longipred/experiment.hpp"

namespace longipred {

/// Parses the experiment config JSON (see README for the schema). Unknown
/// keys are rejected so typos surface as errors instead of silent defaults.
ExperimentConfig parse_experiment_config(const std::filesystem::path& path);
ExperimentConfig parse_experiment_config_json(const nlohmann::json& j);

/// Resolved-config echo for the report.
nlohmann::json config_to_json(const ExperimentConfig& config);

/// Seed-sample CSV for the synthetic generator: optional header row, then
/// one numeric column per feature.
Matrix load_seed_samples(const std::filesystem::path& path);

}  // namespace longipred
