#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "longipred/types.hpp"

namespace longipred {

struct PatientRecord {
  std::string patient_id;
  Vector baseline;                // length M, never missing
  std::optional<Vector> fu1;      // all-or-none per patient
  Vector covariates;              // aligned with Cohort::covariate_names
  int y1 = 0;
  int y2 = 0;
};

/// Patient-indexed tabular dataset. Immutable by convention after loadime;
/// all downstream operations take it by const reference.
struct Cohort {
  std::vector<PatientRecord> patients;
  std::vector<std::string> feature_names_baseline;  // includes the base_ prefix
  std::vector<std::string> feature_names_fu1;       // includes the fu1_ prefix
  std::vector<std::string> covariate_names;

  int size() const { return static_cast<int>(patients.size()); }
  int n_baseline() const { return static_cast<int>(feature_names_baseline.size()); }
  int n_fu1() const { return static_cast<int>(feature_names_fu1.size()); }

  Matrix baseline_matrix() const;
  Matrix fu1_matrix() const;  // rows without fu1 are filled with NaN
  Matrix covariate_matrix(const std::vector<std::string>& names) const;
  IntVector y1() const;
  IntVector y2() const;
  std::vector<int> fu1_present_indices() const;
  int covariate_index(const std::string& name) const;  // -1 when absent
};

struct ColumnSchema {
  std::vector<std::string> covariate_columns;  // besides months_fu1/months_fu2
};

/// Loads a wide-format cohort CSV (one row per patient). Columns: patient_id,
/// y1, y2 required; months_fu1/months_fu2 optional; covariates per schema;
/// base_* baseline features; fu1_* follow-up-1 features. Empty cells are
/// allowed only in fu1_ columns and only all-or-none per row.
Cohort load_cohort(const std::filesystem::path& path, const ColumnSchema& schema);

/// Canonical column order: patient_id, y1, y2, covariates, base_*, fu1_*.
/// Numbers are written in shortest round-trip form, so write/load/write is
/// byte-stable.
void write_cohort(const Cohort& cohort, const std::filesystem::path& path);

struct Split {
  std::vector<int> train;
  std::vector<int> test;
};

struct SplitPlan {
  std::vector<Split> splits;
  double test_fraction = 0.0;
  std::uint64_t seed = 0;
  int min_occurrences = 0;
};

/// Stratified train/test splits on the joint (y1, y2) label. Each stratum's
/// test count is round(test_fraction * stratum size), so its share deviates
/// from test_fraction by at most one patient. Plans where some patient lands
/// in fewer than min_occurrences test sets are redrawn (fresh sub-seed) up to
/// max_retries times.
SplitPlan make_splits(const Cohort& cohort, int n_splits, double test_fraction,
                      std::uint64_t seed, int min_occurrences = 5,
                      int max_retries = 20);

struct Normalizer {
  Vector mins;
  Vector maxs;
};

/// Per-feature min/max over the given rows only.
Normalizer fit_normalizer(const Matrix& X, const std::vector<int>& rows);

/// (x - min) / (max - min), clipped to [0, 1]; constant features map to 0.
Matrix apply_normalizer(const Normalizer& norm, const Matrix& X);

}  // namespace longipred
