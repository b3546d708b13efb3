#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "longipred/tabular.hpp"
#include "longipred/types.hpp"

namespace longipred {

/// Score-range rules mapping the first-timepoint score to the second label.
/// Cut points are fixed at -1, 0, 1: ranges (-inf,-1), [-1,0), [0,1], (1,inf).
struct TransitionRules {
  double p_extreme_low_to_progressive = 0.90;
  double p_moderate_pos_to_stable = 0.50;
};

struct ParametricFeature {
  enum class Dist { uniform, normal, bimodal, skewed };
  Dist dist = Dist::uniform;
  double a = -1.0;  // uniform: lower bound; normal: mean; bimodal: mode offset; skewed: bulk location
  double b = 1.0;   // uniform: upper bound; normal/bimodal: sd; skewed: tail reach (sign = direction)
};

/// Feature marginals: either one KDE per column of a seed-sample matrix, or
/// a parametric distribution per feature.
struct FeatureSource {
  Matrix seed_samples;  // rows x features; used when non-empty
  std::vector<ParametricFeature> parametric;

  bool uses_seed_samples() const { return seed_samples.size() > 0; }
  static FeatureSource default_uniform(int n_features);
  static FeatureSource default_skewed();  // five radiomics-like skewed marginals
};

struct SynthConfig {
  int n_patients = 300;
  Vector alpha;  // one coefficient per feature
  FeatureSource source;
  TransitionRules transition;
  std::uint64_t seed = 0;

  static SynthConfig defaults();  // 300 patients, alpha (0.4,0.8,0.5,0.7,0.2), uniform source
};

/// Draws features, min-max standardizes each into [-1, 1], scores patients
/// by alpha . x, assigns y1 = (score >= 0) and y2 by the transition rules
/// (subset sizes round(rate * group size), sampled without replacement).
Cohort generate(const SynthConfig& config);

/// counts(i, j) = number of patients with y1 = i and y2 = j.
Eigen::Matrix2i transition_matrix(const Cohort& cohort);

}  // namespace longipred
