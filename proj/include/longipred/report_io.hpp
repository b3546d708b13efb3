#pragma once

#include <filesystem>

#include <json.hpp>

#include "longipred/experiment.hpp"

namespace longipred {

nlohmann::json report_to_json(const ExperimentReport& report);

/// Writes report.json, scores.csv, calibration.csv, reliability_<model>.csv,
/// patient_probas.csv and pca.csv into out_dir (created if needed). Output
/// bytes depend only on the report contents.
void write_report_files(const ExperimentReport& report, const std::filesystem::path& out_dir);

}  // namespace longipred
