#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "longipred/density.hpp"
#include "longipred/glm.hpp"
#include "longipred/metrics.hpp"
#include "longipred/resample.hpp"
#include "longipred/tabular.hpp"
#include "longipred/types.hpp"

namespace longipred {

enum class ModelName {
  baseline_fu1,      // f1: baseline features -> response at 1st follow-up
  baseline_fu2,      // f2: baseline features -> response at 2nd follow-up
  labels_only,       // y1_true as the single feature -> y2
  radiomics_fu1,     // follow-up-1 features -> y2 (fu1-complete patients only)
  delta,             // relative feature change (fu1-base)/base -> y2
  longit_true,       // f2^L tested with true intermediate labels
  longit_predicted,  // f2^L tested with f1's thresholded predictions
  longit_gkde        // f2^L tested with labels sampled from per-patient KDEs
};

std::string to_string(ModelName name);
std::optional<ModelName> parse_model_name(const std::string& s);

struct ModelSpec {
  ModelName name = ModelName::baseline_fu1;
  ImbalanceStrategy imbalance;
  bool include_covariates = true;
};

/// Solver and evaluation knobs shared by every model of an experiment.
struct PipelineContext {
  double C = 1.0;
  double tol = 1e-6;
  int max_iter = 1000;
  double threshold = 0.5;
  int jobs = 1;
};

/// Test-set probabilities accumulated across splits, per patient.
struct ProbaTable {
  std::vector<std::vector<std::pair<int, double>>> per_patient;  // (split_index, proba)

  bool empty() const;
  std::optional<double> lookup(int patient, int split) const;
  Vector probas_of(int patient) const;
};

/// n_patients x k binary labels sampled from the per-patient densities.
struct SampledLabelMatrix {
  Eigen::MatrixXi labels;
  std::uint64_t source_seed = 0;
};

struct Step1Result {
  std::vector<SkillScores> per_split;
  ProbaTable table;
  std::vector<Vector> test_probas;   // per split, aligned with the split's test indices
  std::vector<IntVector> test_y;     // ditto
  bool any_degenerate = false;
};

/// Step 1: per split, train f1 on the training fold (normalize, handle
/// imbalance, fit) and record every test patient's predicted probability of
/// class-1 response at the first follow-up.
Step1Result run_step1(const Cohort& cohort, const SplitPlan& plan, const ModelSpec& spec,
                      const PipelineContext& ctx, std::uint64_t smote_seed);

/// Step 2a: one Gaussian KDE per patient over its recorded probabilities.
std::vector<GaussianKde> build_patient_densities(const ProbaTable& table, int min_occurrences);

/// Step 2b: k draws per patient, clipped to [0, 1] and thresholded (>=).
SampledLabelMatrix sample_intermediate_labels(const std::vector<GaussianKde>& densities, int k,
                                              double threshold, std::uint64_t seed);

enum class LabelMode { true_labels, predicted, sampled };

struct ModelRunResult {
  std::vector<SkillScores> per_split;
  int n_splits_used = 0;     // splits actually evaluated (restricted models may skip)
  bool any_degenerate = false;
  std::vector<std::string> delta_fallback;  // delta features that hit a zero baseline
};

/// Step 3: f2^L is trained per split on baseline features plus the TRUE
/// intermediate label; `mode` only controls the value of that feature at
/// test time. Feature order is fixed: normalized baseline (and covariate)
/// columns first, the un-normalized intermediate label last. Sampled mode
/// scores each of the k label columns and averages the k score vectors per
/// split. Training is shared across the requested modes (the fitted model
/// does not depend on the mode).
std::map<LabelMode, ModelRunResult> run_longitudinal(
    const Cohort& cohort, const SplitPlan& plan, const ModelSpec& spec,
    const std::vector<LabelMode>& modes, const PipelineContext& ctx, std::uint64_t smote_seed,
    const Step1Result* step1, const SampledLabelMatrix* sampled);

/// Table-1 style benchmark models (baseline_fu2, labels_only, radiomics_fu1,
/// delta) targeting the second follow-up response.
ModelRunResult run_benchmark(const Cohort& cohort, const SplitPlan& plan, const ModelSpec& spec,
                             const PipelineContext& ctx, std::uint64_t smote_seed);

/// Optional leave-one-out evaluation. Each model is refit once per held-out
/// patient and scored on the pooled held-out predictions (per-fold scores
/// are meaningless with one test sample). longit_gkde samples from KDEs over
/// each patient's single held-out probability.
struct LoocvResult {
  std::map<std::string, SkillScores> scores;
  std::map<std::string, std::string> errors;
};
LoocvResult run_loocv(const Cohort& cohort, const std::vector<ModelSpec>& roster,
                      const PipelineContext& ctx, int k_samples, std::uint64_t seed);

}  // namespace longipred
