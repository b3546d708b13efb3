#pragma once

#include <vector>

#include "longipred/types.hpp"

namespace longipred {

/// (1/N) * sum (p_i - y_i)^2. Requires p in [0, 1].
double brier_score(const Vector& p, const IntVector& y);

/// -(1/N) * sum (y log p + (1-y) log(1-p)), with p clipped to [eps, 1-eps].
double log_loss(const Vector& p, const IntVector& y, double eps = 1e-15);

/// Monotone non-decreasing least-squares fit of y on p. Evaluation is
/// piecewise linear between knots and clamps outside the knot range.
struct IsotonicMap {
  Vector knots_x;  // strictly ascending (unique sorted p values)
  Vector knots_y;  // non-decreasing fitted values
};

/// Pool-adjacent-violators. Duplicate p values are pre-pooled (averaged) so
/// the map is a function of p.
IsotonicMap fit_isotonic(const Vector& p, const IntVector& y);

double apply_isotonic(const IsotonicMap& map, double p);
Vector apply_isotonic(const IsotonicMap& map, const Vector& p);

struct ReliabilityBin {
  double mean_predicted = 0.0;
  double fraction_positive = 0.0;
  int count = 0;
};

struct ReliabilityCurve {
  std::vector<ReliabilityBin> bins;  // empty bins omitted
};

/// Uniform bins over [0, 1]; the last bin is right-closed so p = 1 lands in it.
ReliabilityCurve reliability_curve(const Vector& p, const IntVector& y, int n_bins = 10);

}  // namespace longipred
