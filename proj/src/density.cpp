#include "longipred/density.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "longipred/errors.hpp"
#include "longipred/rng.hpp"

namespace longipred {

namespace {

constexpr double kMinBandwidth = 0.01;
const double kInvSqrt2Pi = 1.0 / std::sqrt(2.0 * M_PI);

// Linear-interpolation quantile on a sorted vector (position (n-1)*q).
double quantile_sorted(const std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(pos);
  if (lo + 1 >= sorted.size()) return sorted.back();
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace

double silverman_bandwidth(const Vector& points) {
  const int n = static_cast<int>(points.size());
  if (n < 2) return 0.0;
  const double mean = points.mean();
  const double sd = std::sqrt((points.array() - mean).square().sum() / (n - 1));
  std::vector<double> sorted(points.data(), points.data() + n);
  std::sort(sorted.begin(), sorted.end());
  const double iqr = quantile_sorted(sorted, 0.75) - quantile_sorted(sorted, 0.25);
  const double spread = std::min(sd, iqr / 1.34);
  return 0.9 * spread * std::pow(static_cast<double>(n), -0.2);
}

GaussianKde::GaussianKde(Vector points) : points_(std::move(points)) {
  if (points_.size() == 0) throw ValidationError("fit_kde: empty point set");
  if (!points_.allFinite()) throw ValidationError("fit_kde: non-finite point");
  bandwidth_ = std::max(silverman_bandwidth(points_), kMinBandwidth);
}

double GaussianKde::pdf(double x) const {
  const double h = bandwidth_;
  double acc = 0.0;
  for (int i = 0; i < points_.size(); ++i) {
    const double u = (x - points_[i]) / h;
    acc += std::exp(-0.5 * u * u);
  }
  return acc * kInvSqrt2Pi / (static_cast<double>(points_.size()) * h);
}

double GaussianKde::cdf(double x) const {
  const double h = bandwidth_;
  double acc = 0.0;
  for (int i = 0; i < points_.size(); ++i) {
    acc += 0.5 * std::erfc(-(x - points_[i]) / (h * std::sqrt(2.0)));
  }
  return acc / static_cast<double>(points_.size());
}

Vector GaussianKde::sample(int k, std::uint64_t seed) const {
  if (k < 1) throw ValidationError("GaussianKde::sample: k must be >= 1");
  Rng rng(seed);
  Vector out(k);
  const auto n = static_cast<std::uint64_t>(points_.size());
  for (int i = 0; i < k; ++i) {
    out[i] = points_[static_cast<int>(rng.below(n))] + bandwidth_ * rng.normal();
  }
  return out;
}

GaussianKde fit_kde(const Vector& points) { return GaussianKde(points); }

}  // namespace longipred
