#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "longipred/calib.hpp"
#include "longipred/pipeline.hpp"
#include "longipred/synthgen.hpp"

namespace longipred {

struct DatasetSpec {
  bool is_synth = false;
  std::string path;    // cohort CSV (when !is_synth)
  SynthConfig synth;   // generator config (when is_synth)
};

struct ExperimentConfig {
  DatasetSpec dataset;
  std::vector<ModelSpec> models;  // empty = default roster for the dataset kind
  int n_splits = 0;               // 0 = 230 for synthetic, 40 for file cohorts
  double test_fraction = 0.4;
  int k_samples = 100;
  double threshold = 0.5;
  double C = 1.0;
  int min_occurrences = 5;
  std::uint64_t seed = 42;
  std::vector<std::string> covariate_columns;
  std::string out_dir = "out";
  int jobs = 1;
  bool loocv = false;
};

/// Fills in everything the config left implicit (split count, model roster
/// with per-dataset imbalance defaults, synth generator seed).
ExperimentConfig resolve_config(const ExperimentConfig& config);

struct CalibrationEntry {
  double brier_mean = 0.0, brier_std = 0.0;
  double log_loss_mean = 0.0, log_loss_std = 0.0;
};

struct ModelReport {
  std::string name;
  bool ok = false;
  std::string error;
  ScoreSummary summary;
  int n_splits_used = 0;
  bool any_degenerate = false;
  std::vector<std::string> delta_fallback;
};

struct ExperimentReport {
  ExperimentConfig config;  // resolved
  std::map<std::string, std::uint64_t> seeds;
  std::vector<ModelReport> models;

  // Step-1 calibration (raw vs isotonic, fit per split on its test fold).
  bool has_calibration = false;
  CalibrationEntry calibration_raw, calibration_isotonic;
  ReliabilityCurve reliability_raw, reliability_isotonic;

  // Per-patient probability data (histogram source + KDE fit).
  ProbaTable proba_table;
  std::vector<GaussianKde> densities;  // empty when step 2 was not reached

  // Cohort snapshot for plot files.
  std::vector<std::string> patient_ids;
  IntVector y1, y2;
  Matrix pca_projection;
  Eigen::Vector2d pca_explained = Eigen::Vector2d::Zero();
  Eigen::Matrix2i transition = Eigen::Matrix2i::Zero();

  // Optional leave-one-out evaluation (pooled over held-out predictions).
  bool has_loocv = false;
  std::vector<std::pair<std::string, SkillScores>> loocv_scores;
};

/// Runs every requested model on one shared split plan, plus the step-1
/// calibration analysis and the plot-data extractions. A model failure is
/// recorded and does not abort the others.
ExperimentReport run_experiment(const ExperimentConfig& config);

/// Loads the configured cohort (or generates the synthetic one).
Cohort load_dataset(const ExperimentConfig& config);

}  // namespace longipred
