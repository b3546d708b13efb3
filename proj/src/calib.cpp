#include "longipred/calib.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "longipred/errors.hpp"

namespace longipred {

namespace {

void check_pair(const Vector& p, const IntVector& y) {
  if (p.size() != y.size()) throw ValidationError("probability and label vectors differ in length");
  if (p.size() == 0) throw ValidationError("empty probability vector");
}

}  // namespace

double brier_score(const Vector& p, const IntVector& y) {
  check_pair(p, y);
  if ((p.array() < 0.0).any() || (p.array() > 1.0).any()) {
    throw ValidationError("brier_score: probabilities must lie in [0, 1]");
  }
  return (p - y.cast<double>()).squaredNorm() / static_cast<double>(p.size());
}

double log_loss(const Vector& p, const IntVector& y, double eps) {
  check_pair(p, y);
  double acc = 0.0;
  for (int i = 0; i < p.size(); ++i) {
    const double pi = std::clamp(p[i], eps, 1.0 - eps);
    acc += y[i] == 1 ? std::log(pi) : std::log(1.0 - pi);
  }
  return -acc / static_cast<double>(p.size());
}

IsotonicMap fit_isotonic(const Vector& p, const IntVector& y) {
  check_pair(p, y);
  const int n = static_cast<int>(p.size());
  if (n < 2) throw ValidationError("fit_isotonic: need at least 2 points");

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return p[a] < p[b]; });

  // Pre-pool duplicate p values so the fit is a function of p.
  std::vector<double> xs, means, weights;
  for (int idx = 0; idx < n;) {
    int j = idx;
    double sum = 0.0;
    while (j < n && p[order[j]] == p[order[idx]]) {
      sum += static_cast<double>(y[order[j]]);
      ++j;
    }
    xs.push_back(p[order[idx]]);
    means.push_back(sum / (j - idx));
    weights.push_back(static_cast<double>(j - idx));
    idx = j;
  }

  // PAVA: merge adjacent blocks while monotonicity is violated.
  std::vector<double> val, wt;
  std::vector<int> len;  // number of xs entries covered by each block
  for (std::size_t i = 0; i < xs.size(); ++i) {
    val.push_back(means[i]);
    wt.push_back(weights[i]);
    len.push_back(1);
    while (val.size() > 1 && val[val.size() - 2] > val.back()) {
      const double merged_w = wt[wt.size() - 2] + wt.back();
      val[val.size() - 2] = (val[val.size() - 2] * wt[wt.size() - 2] + val.back() * wt.back()) / merged_w;
      wt[wt.size() - 2] = merged_w;
      len[len.size() - 2] += len.back();
      val.pop_back();
      wt.pop_back();
      len.pop_back();
    }
  }

  IsotonicMap map;
  map.knots_x = Vector(static_cast<int>(xs.size()));
  map.knots_y = Vector(static_cast<int>(xs.size()));
  int pos = 0;
  for (std::size_t b = 0; b < val.size(); ++b) {
    for (int t = 0; t < len[b]; ++t, ++pos) {
      map.knots_x[pos] = xs[pos];
      map.knots_y[pos] = val[b];
    }
  }
  return map;
}

double apply_isotonic(const IsotonicMap& map, double p) {
  const int n = static_cast<int>(map.knots_x.size());
  if (n == 0) throw ValidationError("apply_isotonic: empty map");
  if (p <= map.knots_x[0]) return map.knots_y[0];
  if (p >= map.knots_x[n - 1]) return map.knots_y[n - 1];
  // first knot strictly greater than p
  int hi = static_cast<int>(std::upper_bound(map.knots_x.data(), map.knots_x.data() + n, p) - map.knots_x.data());
  const int lo = hi - 1;
  const double t = (p - map.knots_x[lo]) / (map.knots_x[hi] - map.knots_x[lo]);
  return map.knots_y[lo] + t * (map.knots_y[hi] - map.knots_y[lo]);
}

Vector apply_isotonic(const IsotonicMap& map, const Vector& p) {
  Vector out(p.size());
  for (int i = 0; i < p.size(); ++i) out[i] = apply_isotonic(map, p[i]);
  return out;
}

ReliabilityCurve reliability_curve(const Vector& p, const IntVector& y, int n_bins) {
  check_pair(p, y);
  if (n_bins < 2) throw ValidationError("reliability_curve: n_bins must be >= 2");
  std::vector<double> sum_p(n_bins, 0.0), sum_y(n_bins, 0.0);
  std::vector<int> count(n_bins, 0);
  for (int i = 0; i < p.size(); ++i) {
    if (p[i] < 0.0 || p[i] > 1.0) throw ValidationError("reliability_curve: probability outside [0, 1]");
    const int b = std::min(static_cast<int>(p[i] * n_bins), n_bins - 1);
    sum_p[b] += p[i];
    sum_y[b] += static_cast<double>(y[i]);
    ++count[b];
  }
  ReliabilityCurve curve;
  for (int b = 0; b < n_bins; ++b) {
    if (count[b] == 0) continue;
    curve.bins.push_back({sum_p[b] / count[b], sum_y[b] / count[b], count[b]});
  }
  return curve;
}

}  // namespace longipred
