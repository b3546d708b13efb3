#pragma once

#include <vector>

#include "longipred/types.hpp"

namespace longipred {

/// Fitted L1-penalized logistic classifier.
struct LogisticModel {
  Vector weights;
  double intercept = 0.0;
  double C = 1.0;
  bool converged = false;
  int n_iters = 0;
  bool degenerate = false;  // single-class training target
  std::vector<double> objective_history;  // objective before pass 1, then after each pass
};

/// Objective: |w|_1 + C * sum_i s_i * bce(y_i, sigmoid(w.x_i + b)),
/// intercept unpenalized.
double l1_logistic_objective(const Matrix& X, const IntVector& y, const Vector& sample_weights,
                             double C, const Vector& w, double b);

/// Cyclic coordinate descent on a quadratic majorization of the weighted
/// logistic loss (curvature bound 1/4), soft-thresholding each coordinate.
/// Every update minimizes a global upper bound, so the objective never
/// increases. Stops when the relative objective decrease over one full pass
/// falls below tol.
///
/// A single-class target yields a degenerate constant model: zero weights,
/// intercept at the logit of the (weighted, clipped) class rate.
LogisticModel fit_l1_logistic(const Matrix& X, const IntVector& y, const Vector& sample_weights,
                              double C = 1.0, double tol = 1e-6, int max_iter = 1000);

/// sigmoid(X w + b), clipped to [1e-12, 1 - 1e-12].
Vector predict_proba(const LogisticModel& model, const Matrix& X);

/// Indicator of proba >= threshold (ties go to 1).
IntVector predict_label(const LogisticModel& model, const Matrix& X, double threshold = 0.5);

}  // namespace longipred
