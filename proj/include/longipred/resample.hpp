#pragma once

#include <cstdint>
#include <utility>

#include "longipred/types.hpp"

namespace longipred {

struct ImbalanceStrategy {
  enum class Kind { none, inverse_frequency, smote };
  Kind kind = Kind::none;
  int smote_k = 5;
  double smote_target_ratio = 1.0;  // 1.0 = fully balanced classes
  std::uint64_t seed = 0;
};

/// s_i = n / (2 * n_class(y_i)). Mean weight is 1 and the weights sum to n.
Vector inverse_frequency_weights(const IntVector& y);

/// Appends interpolated minority samples until the minority count reaches
/// round(target_ratio * majority count). Each synthetic row lies on the
/// segment between a minority row and one of its k nearest minority
/// neighbors (Euclidean; distance ties broken by lower row index). Original
/// rows come first and are untouched.
std::pair<Matrix, IntVector> smote_oversample(const Matrix& X, const IntVector& y,
                                              const ImbalanceStrategy& strategy);

}  // namespace longipred
