#include "longipred/synthgen.hpp"

#include <cmath>
#include <sstream>

#include "longipred/density.hpp"
#include "longipred/errors.hpp"
#include "longipred/rng.hpp"

namespace longipred {

namespace {

// Seed streams: feature f draws from stream f; the two stochastic label
// groups get streams well past any feature index.
constexpr std::uint64_t kStreamExtremeLow = 1u << 20;
constexpr std::uint64_t kStreamModeratePos = (1u << 20) + 1;

Vector draw_feature(const SynthConfig& config, int f) {
  const std::uint64_t seed = derive_seed(config.seed, static_cast<std::uint64_t>(f));
  if (config.source.uses_seed_samples()) {
    const Vector col = config.source.seed_samples.col(f);
    double lo = col[0], hi = col[0];
    for (int i = 1; i < col.size(); ++i) {
      lo = std::min(lo, col[i]);
      hi = std::max(hi, col[i]);
    }
    if (lo == hi) {
      throw ValidationError("synth feature " + std::to_string(f + 1) + ": constant seed sample");
    }
    return fit_kde(col).sample(config.n_patients, seed);
  }
  const ParametricFeature& pf = config.source.parametric[f];
  Rng rng(seed);
  Vector out(config.n_patients);
  for (int i = 0; i < config.n_patients; ++i) {
    switch (pf.dist) {
      case ParametricFeature::Dist::uniform:
        out[i] = pf.a + (pf.b - pf.a) * rng.uniform();
        break;
      case ParametricFeature::Dist::normal:
        out[i] = pf.a + pf.b * rng.normal();
        break;
      case ParametricFeature::Dist::bimodal:
        // equal-weight mixture of two Gaussians at -a and +a
        out[i] = (rng.uniform() < 0.5 ? -pf.a : pf.a) + pf.b * rng.normal();
        break;
      case ParametricFeature::Dist::skewed: {
        // bulk near a with a one-sided power tail: a + sign(b) * u^|b|.
        // Larger |b| concentrates the bulk and thins the tail; the sign
        // sets the tail direction. Min-max standardization later removes
        // location and scale, so shape is all that matters here.
        const double u = rng.uniform();
        out[i] = pf.a + (pf.b < 0.0 ? -1.0 : 1.0) * std::pow(u, std::abs(pf.b));
        break;
      }
    }
  }
  return out;
}

void validate(const SynthConfig& config) {
  const int m = static_cast<int>(config.alpha.size());
  if (m < 1) throw ValidationError("synth config: alpha must be non-empty");
  if (config.n_patients < 10) throw ValidationError("synth config: n_patients must be >= 10");
  if (config.source.uses_seed_samples()) {
    if (config.source.seed_samples.cols() != m) {
      throw ValidationError("synth config: seed-sample column count must match alpha length");
    }
    if (config.source.seed_samples.rows() < 10) {
      throw ValidationError("synth config: need >= 10 seed-sample rows per feature");
    }
  } else if (static_cast<int>(config.source.parametric.size()) != m) {
    throw ValidationError("synth config: parametric feature count must match alpha length");
  }
  const auto& t = config.transition;
  if (t.p_extreme_low_to_progressive < 0.0 || t.p_extreme_low_to_progressive > 1.0 ||
      t.p_moderate_pos_to_stable < 0.0 || t.p_moderate_pos_to_stable > 1.0) {
    throw ValidationError("synth config: transition probabilities must lie in [0, 1]");
  }
}

}  // namespace

FeatureSource FeatureSource::default_uniform(int n_features) {
  FeatureSource src;
  src.parametric.assign(n_features, ParametricFeature{});
  return src;
}

FeatureSource FeatureSource::default_skewed() {
  // One-sided power-tail marginals mimic min-max standardized radiomic
  // features: a compact bulk with a long tail on one side. Two features
  // tail left, three tail right, which keeps the score near-centered while
  // leaving it left-heavy enough that the extreme-low transition group is
  // well populated.
  FeatureSource src;
  auto skew = [](double b) {
    ParametricFeature p;
    p.dist = ParametricFeature::Dist::skewed;
    p.a = 0.0;
    p.b = b;
    return p;
  };
  src.parametric = {skew(-3.0), skew(-3.0), skew(3.0), skew(3.0), skew(3.0)};
  return src;
}

SynthConfig SynthConfig::defaults() {
  SynthConfig config;
  config.alpha = Vector(5);
  config.alpha << 0.4, 0.8, 0.5, 0.7, 0.2;
  config.source = FeatureSource::default_skewed();
  return config;
}

Cohort generate(const SynthConfig& config) {
  validate(config);
  const int n = config.n_patients;
  const int m = static_cast<int>(config.alpha.size());

  Matrix X(n, m);
  for (int f = 0; f < m; ++f) X.col(f) = draw_feature(config, f);

  // Min-max standardize each feature into [-1, 1] over the generated cohort.
  for (int f = 0; f < m; ++f) {
    const double lo = X.col(f).minCoeff();
    const double hi = X.col(f).maxCoeff();
    if (lo == hi) {
      throw ValidationError("synth feature " + std::to_string(f + 1) + ": generated values are constant");
    }
    X.col(f) = 2.0 * (X.col(f).array() - lo) / (hi - lo) - 1.0;
  }

  const Vector score = X * config.alpha;

  std::vector<int> y1(n), y2(n, -1);
  std::vector<int> extreme_low, moderate_pos;
  for (int i = 0; i < n; ++i) {
    y1[i] = score[i] >= 0.0 ? 1 : 0;
    if (score[i] > 1.0) {
      y2[i] = 1;  // severe condition persists
    } else if (score[i] >= 0.0) {
      moderate_pos.push_back(i);
    } else if (score[i] >= -1.0) {
      y2[i] = 0;  // stable stays stable
    } else {
      extreme_low.push_back(i);
    }
  }

  // Extreme negative scores: a seeded round(rate * size) subset progresses.
  {
    Rng rng(derive_seed(config.seed, kStreamExtremeLow));
    const int n_prog = static_cast<int>(std::llround(config.transition.p_extreme_low_to_progressive *
                                                     static_cast<double>(extreme_low.size())));
    for (int i : extreme_low) y2[i] = 0;
    for (int pick : rng.sample_without_replacement(static_cast<int>(extreme_low.size()), n_prog)) {
      y2[extreme_low[pick]] = 1;
    }
  }
  // Moderate positive scores: a seeded subset reverts to stable.
  {
    Rng rng(derive_seed(config.seed, kStreamModeratePos));
    const int n_stable = static_cast<int>(std::llround(config.transition.p_moderate_pos_to_stable *
                                                       static_cast<double>(moderate_pos.size())));
    for (int i : moderate_pos) y2[i] = 1;
    for (int pick : rng.sample_without_replacement(static_cast<int>(moderate_pos.size()), n_stable)) {
      y2[moderate_pos[pick]] = 0;
    }
  }

  Cohort cohort;
  for (int f = 0; f < m; ++f) cohort.feature_names_baseline.push_back("base_" + std::to_string(f + 1));
  const int width = static_cast<int>(std::to_string(n).size());
  cohort.patients.reserve(n);
  for (int i = 0; i < n; ++i) {
    PatientRecord rec;
    std::ostringstream id;
    id << 'p';
    const std::string digits = std::to_string(i + 1);
    id << std::string(width - digits.size(), '0') << digits;
    rec.patient_id = id.str();
    rec.baseline = X.row(i).transpose();
    rec.covariates = Vector(0);
    rec.y1 = y1[i];
    rec.y2 = y2[i];
    cohort.patients.push_back(std::move(rec));
  }
  return cohort;
}

Eigen::Matrix2i transition_matrix(const Cohort& cohort) {
  Eigen::Matrix2i counts = Eigen::Matrix2i::Zero();
  for (const auto& p : cohort.patients) ++counts(p.y1, p.y2);
  return counts;
}

}  // namespace longipred
