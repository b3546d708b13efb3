#include "longipred/resample.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "longipred/errors.hpp"
#include "longipred/rng.hpp"

namespace longipred {

Vector inverse_frequency_weights(const IntVector& y) {
  const int n = static_cast<int>(y.size());
  int n_pos = 0;
  for (int i = 0; i < n; ++i) {
    if (y[i] != 0 && y[i] != 1) throw ValidationError("inverse_frequency_weights: labels must be 0/1");
    n_pos += y[i];
  }
  const int n_neg = n - n_pos;
  if (n_pos == 0 || n_neg == 0) {
    throw ValidationError("inverse_frequency_weights: both classes must be present");
  }
  Vector w(n);
  const double w_pos = static_cast<double>(n) / (2.0 * n_pos);
  const double w_neg = static_cast<double>(n) / (2.0 * n_neg);
  for (int i = 0; i < n; ++i) w[i] = y[i] == 1 ? w_pos : w_neg;
  return w;
}

std::pair<Matrix, IntVector> smote_oversample(const Matrix& X, const IntVector& y,
                                              const ImbalanceStrategy& strategy) {
  const int n = static_cast<int>(X.rows());
  if (y.size() != n) throw ValidationError("smote_oversample: X and y length mismatch");

  std::vector<int> minority, majority;
  for (int i = 0; i < n; ++i) (y[i] == 1 ? minority : majority).push_back(i);
  int minority_label = 1;
  if (minority.size() > majority.size()) {
    std::swap(minority, majority);
    minority_label = 0;
  }
  const int m = static_cast<int>(minority.size());
  if (m < 2) throw ValidationError("smote_oversample: minority class needs at least 2 samples");

  const int target = static_cast<int>(std::llround(strategy.smote_target_ratio *
                                                   static_cast<double>(majority.size())));
  const int n_synth = std::max(0, target - m);
  Matrix out(n + n_synth, X.cols());
  out.topRows(n) = X;
  IntVector labels(n + n_synth);
  labels.head(n) = y;

  if (n_synth == 0) return {std::move(out), std::move(labels)};

  const int k_eff = std::min(strategy.smote_k, m - 1);

  // k nearest same-class neighbors per minority row, ties by lower index.
  std::vector<std::vector<int>> neighbors(m);
  for (int a = 0; a < m; ++a) {
    std::vector<std::pair<double, int>> dist;
    dist.reserve(m - 1);
    for (int b = 0; b < m; ++b) {
      if (b == a) continue;
      dist.emplace_back((X.row(minority[a]) - X.row(minority[b])).squaredNorm(), b);
    }
    std::sort(dist.begin(), dist.end());
    neighbors[a].reserve(k_eff);
    for (int t = 0; t < k_eff; ++t) neighbors[a].push_back(dist[t].second);
  }

  Rng rng(strategy.seed);
  for (int i = 0; i < n_synth; ++i) {
    const int a = i % m;
    const int b = neighbors[a][rng.below(static_cast<std::uint64_t>(k_eff))];
    const double u = rng.uniform();
    out.row(n + i) = X.row(minority[a]) + u * (X.row(minority[b]) - X.row(minority[a]));
    labels[n + i] = minority_label;
  }
  return {std::move(out), std::move(labels)};
}

}  // namespace longipred
