#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "longipred/errors.hpp"
#include "longipred/rng.hpp"
#include "longipred/synthgen.hpp"
#include "longipred/tabular.hpp"

using namespace longipred;

namespace {

struct Groups {
  std::vector<int> extreme_low, low_neg, moderate_pos, top;
};

Groups score_groups(const Cohort& c, const Vector& alpha) {
  Groups g;
  for (int i = 0; i < c.size(); ++i) {
    const double score = c.patients[i].baseline.dot(alpha);
    if (score > 1.0) g.top.push_back(i);
    else if (score >= 0.0) g.moderate_pos.push_back(i);
    else if (score >= -1.0) g.low_neg.push_back(i);
    else g.extreme_low.push_back(i);
  }
  return g;
}

}  // namespace

TEST_CASE("default synthetic cohort: shape, names, standardization") {
  SynthConfig config = SynthConfig::defaults();
  config.seed = 2024;
  const Cohort c = generate(config);
  CHECK(c.size() == 300);
  REQUIRE(c.n_baseline() == 5);
  CHECK(c.feature_names_baseline[0] == "base_1");
  CHECK(c.feature_names_baseline[4] == "base_5");
  CHECK(c.n_fu1() == 0);
  CHECK(c.covariate_names.empty());

  const Matrix X = c.baseline_matrix();
  for (int f = 0; f < 5; ++f) {
    CHECK(X.col(f).minCoeff() == -1.0);  // min-max standardization attains both ends
    CHECK(X.col(f).maxCoeff() == 1.0);
  }
}

TEST_CASE("labels follow the score rules exactly") {
  SynthConfig config = SynthConfig::defaults();
  config.seed = 99;
  const Cohort c = generate(config);
  const Groups g = score_groups(c, config.alpha);

  for (int i = 0; i < c.size(); ++i) {
    const double score = c.patients[i].baseline.dot(config.alpha);
    CHECK(c.patients[i].y1 == (score >= 0.0 ? 1 : 0));
  }
  for (int i : g.top) CHECK(c.patients[i].y2 == 1);
  for (int i : g.low_neg) CHECK(c.patients[i].y2 == 0);

  auto count_y2 = [&](const std::vector<int>& idx, int label) {
    int n = 0;
    for (int i : idx) n += c.patients[i].y2 == label ? 1 : 0;
    return n;
  };
  CHECK(count_y2(g.extreme_low, 1) ==
        static_cast<int>(std::llround(0.9 * g.extreme_low.size())));
  CHECK(count_y2(g.moderate_pos, 0) ==
        static_cast<int>(std::llround(0.5 * g.moderate_pos.size())));
}

TEST_CASE("a 10-patient extreme-low group gets exactly 9 progressions") {
  // Single strong feature: extreme-low group = patients with x' < -0.4.
  SynthConfig config;
  config.n_patients = 24;
  config.alpha = Vector::Constant(1, 2.5);
  config.source = FeatureSource::default_uniform(1);

  bool found = false;
  for (std::uint64_t seed = 1; seed < 400 && !found; ++seed) {
    config.seed = seed;
    const Cohort c = generate(config);
    const Groups g = score_groups(c, config.alpha);
    if (g.extreme_low.size() != 10) continue;
    found = true;
    int ones = 0;
    for (int i : g.extreme_low) ones += c.patients[i].y2;
    CHECK(ones == 9);
  }
  CHECK(found);
}

TEST_CASE("an all-positive standardized row is deterministically progressive") {
  // score = sum(alpha) = 2.6 > 1 under the default coefficients
  const Vector alpha = SynthConfig::defaults().alpha;
  CHECK(alpha.sum() == doctest::Approx(2.6));
  SynthConfig config = SynthConfig::defaults();
  config.seed = 7;
  const Cohort c = generate(config);
  for (int i = 0; i < c.size(); ++i) {
    if (c.patients[i].baseline.dot(alpha) > 1.0) {
      CHECK(c.patients[i].y1 == 1);
      CHECK(c.patients[i].y2 == 1);
    }
  }
}

TEST_CASE("y1 is near-balanced under the default source") {
  SynthConfig config = SynthConfig::defaults();
  config.seed = 31;
  const Cohort c = generate(config);
  const double rate = c.y1().cast<double>().mean();
  CHECK(std::abs(rate - 0.5) <= 0.10);
}

TEST_CASE("regeneration with the same seed is byte-identical") {
  namespace fs = std::filesystem;
  SynthConfig config = SynthConfig::defaults();
  config.seed = 555;
  const fs::path p1 = fs::temp_directory_path() / "longipred_synth1.csv";
  const fs::path p2 = fs::temp_directory_path() / "longipred_synth2.csv";
  write_cohort(generate(config), p1);
  write_cohort(generate(config), p2);
  std::ifstream f1(p1), f2(p2);
  std::stringstream s1, s2;
  s1 << f1.rdbuf();
  s2 << f2.rdbuf();
  CHECK(s1.str() == s2.str());
  CHECK(!s1.str().empty());
}

TEST_CASE("seed-sample feature source drives the marginals") {
  Rng rng(13);
  SynthConfig config;
  config.n_patients = 120;
  config.alpha = Vector(2);
  config.alpha << 1.0, 0.5;
  config.seed = 3;
  config.source.seed_samples = Matrix(50, 2);
  for (int i = 0; i < 50; ++i) {
    config.source.seed_samples(i, 0) = rng.normal() * 2.0 + 10.0;
    config.source.seed_samples(i, 1) = rng.uniform();
  }
  const Cohort c = generate(config);
  CHECK(c.size() == 120);
  const Matrix X = c.baseline_matrix();
  CHECK(X.col(0).minCoeff() == -1.0);
  CHECK(X.col(0).maxCoeff() == 1.0);
}

TEST_CASE("config validation errors") {
  SUBCASE("alpha/source length mismatch") {
    SynthConfig config;
    config.n_patients = 50;
    config.alpha = Vector::Constant(3, 0.5);
    config.source = FeatureSource::default_uniform(2);
    CHECK_THROWS_AS(generate(config), ValidationError);
  }
  SUBCASE("constant seed sample names the feature") {
    SynthConfig config;
    config.n_patients = 50;
    config.alpha = Vector::Constant(2, 0.5);
    config.source.seed_samples = Matrix(20, 2);
    config.source.seed_samples.col(0).setLinSpaced(20, 0.0, 1.0);
    config.source.seed_samples.col(1).setConstant(4.2);
    try {
      generate(config);
      FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
      CHECK(std::string(e.what()).find("feature 2") != std::string::npos);
    }
  }
  SUBCASE("degenerate uniform bounds give a constant generated feature") {
    SynthConfig config;
    config.n_patients = 30;
    config.alpha = Vector::Constant(1, 1.0);
    ParametricFeature pf;
    pf.a = pf.b = 0.7;  // zero-width uniform
    config.source.parametric = {pf};
    CHECK_THROWS_AS(generate(config), ValidationError);
  }
  SUBCASE("too few patients") {
    SynthConfig config = SynthConfig::defaults();
    config.n_patients = 5;
    CHECK_THROWS_AS(generate(config), ValidationError);
  }
}

TEST_CASE("transition matrix counts pairs") {
  Cohort c;
  c.feature_names_baseline = {"base_x"};
  auto add = [&](int y1, int y2, int count) {
    for (int i = 0; i < count; ++i) {
      PatientRecord r;
      r.patient_id = "p" + std::to_string(c.size());
      r.baseline = Vector::Constant(1, 0.0);
      r.covariates = Vector(0);
      r.y1 = y1;
      r.y2 = y2;
      c.patients.push_back(std::move(r));
    }
  };
  // the real-cohort reference pattern: 21 SD->PD, 11 SD->SD, 0 PD->SD, 15 PD->PD
  add(0, 1, 21);
  add(0, 0, 11);
  add(1, 1, 15);
  const Eigen::Matrix2i t = transition_matrix(c);
  CHECK(t(0, 1) == 21);
  CHECK(t(0, 0) == 11);
  CHECK(t(1, 0) == 0);
  CHECK(t(1, 1) == 15);

  // all-diagonal cohort has empty off-diagonals
  Cohort d;
  d.feature_names_baseline = {"base_x"};
  for (int i = 0; i < 6; ++i) {
    PatientRecord r;
    r.patient_id = "q" + std::to_string(i);
    r.baseline = Vector::Constant(1, 0.0);
    r.covariates = Vector(0);
    r.y1 = i % 2;
    r.y2 = i % 2;
    d.patients.push_back(std::move(r));
  }
  const Eigen::Matrix2i td = transition_matrix(d);
  CHECK(td(0, 1) == 0);
  CHECK(td(1, 0) == 0);
}

TEST_CASE("scores above one can never be stable at the second follow-up") {
  SynthConfig config = SynthConfig::defaults();
  config.seed = 404;
  const Cohort c = generate(config);
  const Eigen::Matrix2i t = transition_matrix(c);
  // patients with score > 1 all have y1 = 1 and y2 = 1; the (1, 0) cell only
  // collects moderate-positive reversions
  const Groups g = score_groups(c, config.alpha);
  CHECK(t(1, 0) == static_cast<int>(std::llround(0.5 * g.moderate_pos.size())));
}
