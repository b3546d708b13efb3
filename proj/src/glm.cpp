#include "longipred/glm.hpp"

#include <algorithm>
#include <cmath>

#include "longipred/errors.hpp"

namespace longipred {

namespace {

constexpr double kProbaClip = 1e-12;

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

// log(1 + exp(t)) without overflow.
double log1pexp(double t) {
  if (t <= -37.0) return std::exp(t);
  if (t <= 18.0) return std::log1p(std::exp(t));
  if (t <= 33.3) return t + std::exp(-t);
  return t;
}

double soft_threshold(double z, double gamma) {
  if (z > gamma) return z - gamma;
  if (z < -gamma) return z + gamma;
  return 0.0;
}

double clipped_logit(double r) {
  r = std::clamp(r, kProbaClip, 1.0 - kProbaClip);
  return std::log(r / (1.0 - r));
}

void check_inputs(const Matrix& X, const IntVector& y, const Vector& s) {
  if (X.rows() != y.size() || X.rows() != s.size()) {
    throw ValidationError("fit_l1_logistic: X, y and weights must have matching row counts");
  }
  if (X.rows() < 2) throw ValidationError("fit_l1_logistic: need at least 2 samples");
  if (!X.allFinite() || !s.allFinite()) {
    throw ValidationError("fit_l1_logistic: non-finite value in input");
  }
  if ((s.array() < 0.0).any()) throw ValidationError("fit_l1_logistic: negative sample weight");
  if (s.sum() <= 0.0) throw ValidationError("fit_l1_logistic: sample weights sum to zero");
  for (int i = 0; i < y.size(); ++i) {
    if (y[i] != 0 && y[i] != 1) throw ValidationError("fit_l1_logistic: labels must be 0/1");
  }
}

}  // namespace

double l1_logistic_objective(const Matrix& X, const IntVector& y, const Vector& s,
                             double C, const Vector& w, double b) {
  double loss = 0.0;
  const Vector z = (X * w).array() + b;
  for (int i = 0; i < X.rows(); ++i) {
    loss += s[i] * (log1pexp(z[i]) - static_cast<double>(y[i]) * z[i]);
  }
  return w.template lpNorm<1>() + C * loss;
}

LogisticModel fit_l1_logistic(const Matrix& X, const IntVector& y, const Vector& s,
                              double C, double tol, int max_iter) {
  check_inputs(X, y, s);
  const int n = static_cast<int>(X.rows());
  const int d = static_cast<int>(X.cols());

  LogisticModel model;
  model.C = C;
  model.weights = Vector::Zero(d);

  const double s_total = s.sum();
  double weighted_rate = 0.0;
  for (int i = 0; i < n; ++i) weighted_rate += s[i] * static_cast<double>(y[i]);
  weighted_rate /= s_total;

  const int n_pos = (y.array() == 1).count();
  if (n_pos == 0 || n_pos == n) {
    model.intercept = clipped_logit(weighted_rate);
    model.degenerate = true;
    model.converged = true;
    return model;
  }

  model.intercept = clipped_logit(weighted_rate);
  Vector z = Vector::Constant(n, model.intercept);

  // Fixed curvature bounds from sigma' <= 1/4.
  Vector hess(d);
  for (int j = 0; j < d; ++j) hess[j] = 0.25 * C * (s.array() * X.col(j).array().square()).sum();
  const double hess_b = 0.25 * C * s_total;

  Vector p(n);
  auto refresh_p = [&]() {
    for (int i = 0; i < n; ++i) p[i] = sigmoid(z[i]);
  };

  model.objective_history.push_back(l1_logistic_objective(X, y, s, C, model.weights, model.intercept));

  for (int pass = 1; pass <= max_iter; ++pass) {
    for (int j = 0; j < d; ++j) {
      if (hess[j] <= 0.0) continue;  // all-zero column: weight stays 0
      refresh_p();
      double grad = 0.0;
      for (int i = 0; i < n; ++i) grad += s[i] * (p[i] - static_cast<double>(y[i])) * X(i, j);
      grad *= C;
      const double w_new = soft_threshold(model.weights[j] - grad / hess[j], 1.0 / hess[j]);
      const double delta = w_new - model.weights[j];
      if (delta != 0.0) {
        model.weights[j] = w_new;
        z += delta * X.col(j);
      }
    }
    refresh_p();
    const double grad_b = C * (s.array() * (p.array() - y.cast<double>().array())).sum();
    const double delta_b = -grad_b / hess_b;
    model.intercept += delta_b;
    z.array() += delta_b;

    const double obj = l1_logistic_objective(X, y, s, C, model.weights, model.intercept);
    const double prev = model.objective_history.back();
    model.objective_history.push_back(obj);
    model.n_iters = pass;
    if (prev - obj < tol * std::max(std::abs(prev), 1e-30)) {
      model.converged = true;
      break;
    }
  }
  return model;
}

Vector predict_proba(const LogisticModel& model, const Matrix& X) {
  if (X.cols() != model.weights.size()) {
    throw ValidationError("predict_proba: feature count mismatch");
  }
  const Vector z = (X * model.weights).array() + model.intercept;
  Vector out(z.size());
  for (int i = 0; i < z.size(); ++i) {
    out[i] = std::clamp(sigmoid(z[i]), kProbaClip, 1.0 - kProbaClip);
  }
  return out;
}

IntVector predict_label(const LogisticModel& model, const Matrix& X, double threshold) {
  const Vector proba = predict_proba(model, X);
  IntVector out(proba.size());
  for (int i = 0; i < proba.size(); ++i) out[i] = proba[i] >= threshold ? 1 : 0;
  return out;
}

}  // namespace longipred
