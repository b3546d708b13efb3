#include "longipred/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "longipred/errors.hpp"

namespace longipred {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

MetricSummary summarize_one(const std::vector<SkillScores>& per_split,
                            double SkillScores::*field) {
  std::vector<double> vals;
  vals.reserve(per_split.size());
  for (const auto& s : per_split) {
    const double v = s.*field;
    if (std::isfinite(v)) vals.push_back(v);
  }
  const int m = static_cast<int>(vals.size());
  if (m < 2) throw ValidationError("summarize_across_splits: metric defined in fewer than 2 splits");
  const double mean = std::accumulate(vals.begin(), vals.end(), 0.0) / m;
  double ss = 0.0;
  for (double v : vals) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / (m - 1));
  const double half = 1.96 * sd / std::sqrt(static_cast<double>(m));
  return {mean, mean - half, mean + half, m};
}

}  // namespace

double roc_auc(const Vector& proba, const IntVector& y_true) {
  const int n = static_cast<int>(proba.size());
  if (y_true.size() != n) throw ValidationError("roc_auc: length mismatch");
  long long n_pos = 0;
  for (int i = 0; i < n; ++i) n_pos += y_true[i];
  const long long n_neg = n - n_pos;
  if (n_pos == 0 || n_neg == 0) return kNaN;

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return proba[a] < proba[b]; });

  // Sum of doubled midranks of positives; doubled so ties stay integral.
  long long rank2_pos = 0;
  int i = 0;
  while (i < n) {
    int j = i;
    while (j < n && proba[order[j]] == proba[order[i]]) ++j;
    const long long rank2 = static_cast<long long>(i + 1) + static_cast<long long>(j);  // 2 * midrank
    for (int t = i; t < j; ++t) {
      if (y_true[order[t]] == 1) rank2_pos += rank2;
    }
    i = j;
  }
  const long long num2 = rank2_pos - n_pos * (n_pos + 1);  // 2*wins + ties
  return static_cast<double>(num2) / static_cast<double>(2 * n_pos * n_neg);
}

SkillScores skill_scores(const IntVector& y_true, const IntVector& y_pred, const Vector& proba) {
  const int n = static_cast<int>(y_true.size());
  if (y_pred.size() != n || proba.size() != n) throw ValidationError("skill_scores: length mismatch");
  if (n == 0) throw ValidationError("skill_scores: empty input");

  int tp = 0, tn = 0, fp = 0, fn = 0;
  for (int i = 0; i < n; ++i) {
    if (y_true[i] == 1) {
      y_pred[i] == 1 ? ++tp : ++fn;
    } else {
      y_pred[i] == 0 ? ++tn : ++fp;
    }
  }

  SkillScores s;
  s.n = n;
  s.accuracy = static_cast<double>(tp + tn) / n;
  s.recall = (tp + fn) > 0 ? static_cast<double>(tp) / (tp + fn) : kNaN;
  s.specificity = (tn + fp) > 0 ? static_cast<double>(tn) / (tn + fp) : kNaN;
  s.balanced_accuracy = (std::isfinite(s.recall) && std::isfinite(s.specificity))
                            ? 0.5 * (s.recall + s.specificity)
                            : kNaN;
  s.roc_auc = roc_auc(proba, y_true);
  return s;
}

ScoreSummary summarize_across_splits(const std::vector<SkillScores>& per_split) {
  if (per_split.size() < 2) throw ValidationError("summarize_across_splits: need >= 2 splits");
  ScoreSummary out;
  out.n_splits = static_cast<int>(per_split.size());
  out.accuracy = summarize_one(per_split, &SkillScores::accuracy);
  out.balanced_accuracy = summarize_one(per_split, &SkillScores::balanced_accuracy);
  out.recall = summarize_one(per_split, &SkillScores::recall);
  out.specificity = summarize_one(per_split, &SkillScores::specificity);
  out.roc_auc = summarize_one(per_split, &SkillScores::roc_auc);
  return out;
}

PcaResult pca_project(const Matrix& X) {
  const int n = static_cast<int>(X.rows());
  const int d = static_cast<int>(X.cols());
  if (n < 3) throw ValidationError("pca_project: need at least 3 rows");
  if (d < 2) throw ValidationError("pca_project: need at least 2 columns");

  const Matrix centered = X.rowwise() - X.colwise().mean();
  const Matrix cov = centered.transpose() * centered / static_cast<double>(n - 1);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(cov);
  if (solver.info() != Eigen::Success) throw ValidationError("pca_project: eigendecomposition failed");

  PcaResult result;
  result.projection = Matrix::Zero(n, 2);
  const double scale = std::max(solver.eigenvalues().maxCoeff(), 0.0);
  for (int c = 0; c < 2; ++c) {
    const int src = d - 1 - c;  // eigenvalues come out ascending
    double lambda = solver.eigenvalues()[src];
    if (lambda < 0.0 && lambda > -1e-12 * std::max(scale, 1.0)) lambda = 0.0;
    if (lambda <= 1e-12 * std::max(scale, 1.0)) {
      result.explained_variance[c] = 0.0;
      continue;  // rank-deficient direction: zero component
    }
    Vector v = solver.eigenvectors().col(src);
    int argmax = 0;
    for (int j = 1; j < d; ++j) {
      if (std::abs(v[j]) > std::abs(v[argmax])) argmax = j;
    }
    if (v[argmax] < 0.0) v = -v;
    result.projection.col(c) = centered * v;
    result.explained_variance[c] = lambda;
  }
  return result;
}

}  // namespace longipred
