#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "longipred/errors.hpp"
#include "longipred/metrics.hpp"
#include "longipred/rng.hpp"
#include "test_util.hpp"

using namespace longipred;

namespace {

std::pair<Vector, IntVector> random_instance(Rng& rng, int n, bool allow_ties) {
  Vector p(n);
  IntVector y(n);
  for (int i = 0; i < n; ++i) {
    p[i] = allow_ties ? std::floor(rng.uniform() * 8.0) / 8.0 : rng.uniform();
    y[i] = rng.uniform() < 0.45 ? 1 : 0;
  }
  return {p, y};
}

}  // namespace

TEST_CASE("roc_auc equals naive pair counting exactly") {
  Rng rng(61);
  int tested = 0;
  while (tested < 100) {
    const int n = 4 + static_cast<int>(rng.below(40));
    auto [p, y] = random_instance(rng, n, tested % 2 == 0);
    if ((y.array() == 1).count() == 0 || (y.array() == 0).count() == 0) continue;
    const double mine = roc_auc(p, y);
    const double naive = oracle::naive_pair_auc(p, y);
    CHECK(mine == naive);  // bit-exact: both are ratios of the same integers
    ++tested;
  }
}

TEST_CASE("roc_auc agrees with trapezoidal ROC integration") {
  Rng rng(67);
  int tested = 0;
  while (tested < 100) {
    const int n = 5 + static_cast<int>(rng.below(60));
    auto [p, y] = random_instance(rng, n, tested % 3 == 0);
    if ((y.array() == 1).count() == 0 || (y.array() == 0).count() == 0) continue;
    CHECK(std::abs(roc_auc(p, y) - oracle::trapezoid_auc(p, y)) < 1e-12);
    ++tested;
  }
}

TEST_CASE("roc_auc complement identity") {
  Rng rng(71);
  for (int rep = 0; rep < 25; ++rep) {
    const int n = 10 + static_cast<int>(rng.below(30));
    auto [p, y] = random_instance(rng, n, rep % 2 == 0);
    if ((y.array() == 1).count() == 0 || (y.array() == 0).count() == 0) continue;
    const Vector q = Vector::Ones(n) - p;
    CHECK(roc_auc(p, y) + roc_auc(q, y) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("skill scores on the worked fixture") {
  IntVector y_true(4), y_pred(4);
  y_true << 1, 1, 0, 0;
  Vector proba(4);
  proba << 0.9, 0.4, 0.6, 0.2;
  for (int i = 0; i < 4; ++i) y_pred[i] = proba[i] >= 0.5 ? 1 : 0;

  const SkillScores s = skill_scores(y_true, y_pred, proba);
  CHECK(s.roc_auc == doctest::Approx(0.75));  // pairs: (.9>.6)+(.9>.2)+(.4<.6 loses)+(.4>.2)
  CHECK(s.accuracy == doctest::Approx(0.5));
  CHECK(s.recall == doctest::Approx(0.5));
  CHECK(s.specificity == doctest::Approx(0.5));
  CHECK(s.balanced_accuracy == doctest::Approx(0.5));
  CHECK(s.n == 4);
}

TEST_CASE("perfect separation scores 1.0 across the board") {
  IntVector y_true(6), y_pred(6);
  y_true << 1, 1, 1, 0, 0, 0;
  y_pred = y_true;
  Vector proba(6);
  proba << 0.9, 0.8, 0.7, 0.3, 0.2, 0.1;
  const SkillScores s = skill_scores(y_true, y_pred, proba);
  CHECK(s.roc_auc == 1.0);
  CHECK(s.accuracy == 1.0);
  CHECK(s.balanced_accuracy == 1.0);
  CHECK(s.recall == 1.0);
  CHECK(s.specificity == 1.0);
}

TEST_CASE("constant probability at the threshold: ties everywhere") {
  // proba 0.5 -> predicted label 1 under >=; half the truths are positive
  IntVector y_true(8);
  for (int i = 0; i < 8; ++i) y_true[i] = i < 4 ? 1 : 0;
  const Vector proba = Vector::Constant(8, 0.5);
  IntVector y_pred = IntVector::Ones(8);
  const SkillScores s = skill_scores(y_true, y_pred, proba);
  CHECK(s.recall == 1.0);
  CHECK(s.specificity == 0.0);
  CHECK(s.balanced_accuracy == 0.5);
  CHECK(s.roc_auc == 0.5);  // all ties count half
}

TEST_CASE("single-class y_true yields NaN for the undefined metrics") {
  IntVector y_true = IntVector::Ones(5);
  IntVector y_pred = IntVector::Ones(5);
  const Vector proba = Vector::Constant(5, 0.8);
  const SkillScores s = skill_scores(y_true, y_pred, proba);
  CHECK(s.accuracy == 1.0);
  CHECK(s.recall == 1.0);
  CHECK(std::isnan(s.specificity));
  CHECK(std::isnan(s.balanced_accuracy));
  CHECK(std::isnan(s.roc_auc));
}

TEST_CASE("summarize_across_splits") {
  SUBCASE("identical scores collapse the interval") {
    SkillScores s;
    s.accuracy = s.balanced_accuracy = s.recall = s.specificity = s.roc_auc = 0.8;
    s.n = 10;
    const ScoreSummary sum = summarize_across_splits({s, s, s});
    CHECK(sum.accuracy.mean == doctest::Approx(0.8));
    CHECK(sum.accuracy.ci_low == doctest::Approx(0.8));
    CHECK(sum.accuracy.ci_high == doctest::Approx(0.8));
    CHECK(sum.accuracy.n_used == 3);
  }
  SUBCASE("two-split arithmetic") {
    SkillScores a, b;
    a.accuracy = a.balanced_accuracy = a.recall = a.specificity = a.roc_auc = 0.6;
    b.accuracy = b.balanced_accuracy = b.recall = b.specificity = b.roc_auc = 0.8;
    const ScoreSummary sum = summarize_across_splits({a, b});
    const double sd = std::sqrt((0.01 + 0.01) / 1.0);  // 0.1414
    const double half = 1.96 * sd / std::sqrt(2.0);
    CHECK(sum.roc_auc.mean == doctest::Approx(0.7));
    CHECK(sum.roc_auc.ci_high - sum.roc_auc.mean == doctest::Approx(half).epsilon(1e-9));
    CHECK(half == doctest::Approx(0.196).epsilon(1e-2));
  }
  SUBCASE("NaN splits are excluded per metric only") {
    SkillScores a, b, c;
    a.accuracy = 0.5;
    b.accuracy = 0.7;
    c.accuracy = 0.9;
    a.roc_auc = 0.6;
    b.roc_auc = std::numeric_limits<double>::quiet_NaN();
    c.roc_auc = 0.8;
    a.balanced_accuracy = b.balanced_accuracy = c.balanced_accuracy = 0.5;
    a.recall = b.recall = c.recall = 0.5;
    a.specificity = b.specificity = c.specificity = 0.5;
    const ScoreSummary sum = summarize_across_splits({a, b, c});
    CHECK(sum.accuracy.n_used == 3);
    CHECK(sum.roc_auc.n_used == 2);
    CHECK(sum.roc_auc.mean == doctest::Approx(0.7));
  }
  SUBCASE("fewer than two valid splits errors") {
    SkillScores a, b;
    a.accuracy = b.accuracy = 0.5;
    a.balanced_accuracy = b.balanced_accuracy = 0.5;
    a.recall = b.recall = 0.5;
    a.specificity = b.specificity = 0.5;
    a.roc_auc = 0.5;
    b.roc_auc = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(summarize_across_splits({a, b}), ValidationError);
  }
  SUBCASE("permutation invariance over splits") {
    Rng rng(3);
    std::vector<SkillScores> scores(9);
    for (auto& s : scores) {
      s.accuracy = rng.uniform();
      s.balanced_accuracy = rng.uniform();
      s.recall = rng.uniform();
      s.specificity = rng.uniform();
      s.roc_auc = rng.uniform();
    }
    auto shuffled = scores;
    std::swap(shuffled[0], shuffled[7]);
    std::swap(shuffled[2], shuffled[5]);
    const ScoreSummary x = summarize_across_splits(scores);
    const ScoreSummary y = summarize_across_splits(shuffled);
    CHECK(x.recall.mean == doctest::Approx(y.recall.mean).epsilon(1e-15));
    CHECK(x.recall.ci_low == doctest::Approx(y.recall.ci_low).epsilon(1e-12));
  }
}

TEST_CASE("pca on collinear data puts all variance on the first component") {
  Rng rng(7);
  Matrix X(50, 3);
  Vector dir(3);
  dir << 1.0, -2.0, 0.5;
  for (int i = 0; i < 50; ++i) X.row(i) = (rng.uniform() * 4.0 - 2.0) * dir.transpose();
  const PcaResult pca = pca_project(X);
  CHECK(pca.explained_variance[0] > 0.0);
  CHECK(pca.explained_variance[1] == 0.0);
  CHECK(pca.projection.col(1).lpNorm<Eigen::Infinity>() == 0.0);
}

TEST_CASE("pca on an isotropic Gaussian spreads variance evenly") {
  Rng rng(11);
  Matrix X(10000, 2);
  for (int i = 0; i < X.size(); ++i) X.data()[i] = rng.normal();
  const PcaResult pca = pca_project(X);
  CHECK(pca.explained_variance[0] / pca.explained_variance[1] < 1.1);
  CHECK(pca.explained_variance[0] >= pca.explained_variance[1]);
}

TEST_CASE("pca reconstruction identity: residual variance = total - explained") {
  Rng rng(13);
  Matrix X(80, 4);
  for (int i = 0; i < 80; ++i) {
    const double t = rng.normal(), u = rng.normal();
    X(i, 0) = t;
    X(i, 1) = 0.5 * t + 0.2 * u;
    X(i, 2) = u + 0.05 * rng.normal();
    X(i, 3) = 0.1 * rng.normal();
  }
  const Matrix centered = X.rowwise() - X.colwise().mean();
  const double total_var = (centered.transpose() * centered / 79.0).trace();
  const PcaResult pca = pca_project(X);
  const double projected_var = pca.projection.squaredNorm() / 79.0;
  CHECK(projected_var == doctest::Approx(pca.explained_variance.sum()).epsilon(1e-10));
  CHECK(total_var - pca.explained_variance.sum() >= -1e-8);
}

TEST_CASE("pca sign convention: largest-magnitude loading positive") {
  // With data dominated by one axis the leading eigenvector is that axis;
  // flipping the input must not flip the reported projection's convention.
  Rng rng(17);
  Matrix X(60, 2);
  for (int i = 0; i < 60; ++i) {
    X(i, 0) = 3.0 * rng.normal();
    X(i, 1) = 0.1 * rng.normal();
  }
  const PcaResult a = pca_project(X);
  const PcaResult b = pca_project((-X.array()).matrix());
  // projections of mirrored data are mirrored points under the same basis sign rule
  CHECK((a.projection.col(0) + b.projection.col(0)).lpNorm<Eigen::Infinity>() < 1e-9);
}

TEST_CASE("pca preconditions") {
  Matrix tiny(2, 3);
  tiny.setRandom();
  CHECK_THROWS_AS(pca_project(tiny), ValidationError);
  Matrix narrow(5, 1);
  narrow.setRandom();
  CHECK_THROWS_AS(pca_project(narrow), ValidationError);
}
