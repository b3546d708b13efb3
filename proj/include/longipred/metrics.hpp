#pragma once

#include <vector>

#include "longipred/types.hpp"

namespace longipred {

/// Per-split classification scores. Metrics that are undefined on the given
/// labels (single-class y_true) are NaN and get excluded from averaging.
struct SkillScores {
  double accuracy = 0.0;
  double balanced_accuracy = 0.0;
  double recall = 0.0;
  double specificity = 0.0;
  double roc_auc = 0.0;
  int n = 0;
};

/// Mann-Whitney AUC with midrank tie handling; equals brute-force pair
/// counting (wins + half-ties over pos*neg pairs) exactly. NaN if y is
/// single-class.
double roc_auc(const Vector& proba, const IntVector& y_true);

SkillScores skill_scores(const IntVector& y_true, const IntVector& y_pred, const Vector& proba);

struct MetricSummary {
  double mean = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  int n_used = 0;  // splits where the metric was defined
};

struct ScoreSummary {
  MetricSummary accuracy, balanced_accuracy, recall, specificity, roc_auc;
  int n_splits = 0;
};

/// mean +- 1.96 * sd / sqrt(m) per metric (normal approximation, sd with
/// m-1 denominator). Splits where a metric is NaN are skipped for that
/// metric only; needs >= 2 valid splits per metric.
ScoreSummary summarize_across_splits(const std::vector<SkillScores>& per_split);

struct PcaResult {
  Matrix projection;                  // n x 2
  Eigen::Vector2d explained_variance;  // top covariance eigenvalues
};

/// Projects mean-centered rows onto the top-2 eigenvectors of the sample
/// covariance. Each eigenvector's sign is fixed so its largest-magnitude
/// loading is positive. Rank-deficient data yields a zero second component.
PcaResult pca_project(const Matrix& X);

}  // namespace longipred
