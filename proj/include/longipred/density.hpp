#pragma once

#include <cstdint>

#include "longipred/types.hpp"

namespace longipred {

/// 1-D Gaussian kernel density estimate over a fixed point set.
/// Immutable after construction; pdf/cdf/sample are pure.
class GaussianKde {
 public:
  explicit GaussianKde(Vector points);

  const Vector& points() const { return points_; }
  double bandwidth() const { return bandwidth_; }

  /// (1 / (n h)) * sum_i phi((x - x_i) / h)
  double pdf(double x) const;

  /// (1 / n) * sum_i Phi((x - x_i) / h)
  double cdf(double x) const;

  /// k draws: uniformly chosen point + N(0, h^2) noise. Deterministic given
  /// the seed.
  Vector sample(int k, std::uint64_t seed) const;

 private:
  Vector points_;
  double bandwidth_;
};

/// Silverman's rule with the robust spread: 0.9 * min(sd, IQR/1.34) * n^(-1/5).
/// Returns 0 for degenerate inputs (n = 1 or all points equal).
double silverman_bandwidth(const Vector& points);

/// Bandwidth from Silverman's rule, floored at 0.01 so the estimate stays
/// well-defined when all points coincide.
GaussianKde fit_kde(const Vector& points);

}  // namespace longipred
