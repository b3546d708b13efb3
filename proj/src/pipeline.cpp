#include "longipred/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <mutex>
#include <set>
#include <thread>

#include "longipred/errors.hpp"
#include "longipred/rng.hpp"

namespace longipred {

namespace {

const char* kModelNames[] = {"baseline_fu1", "baseline_fu2",    "labels_only",
                             "radiomics_fu1", "delta",           "longit_true",
                             "longit_predicted", "longit_gkde"};

/// Runs fn(0..n-1) on up to `jobs` threads. Work items must be independent;
/// results are collected by index so scheduling cannot affect output.
void parallel_for(int n, int jobs, const std::function<void(int)>& fn) {
  if (jobs <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&]() {
    while (true) {
      const int i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  const int n_threads = std::min(jobs, n);
  pool.reserve(n_threads);
  for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

Matrix gather_rows(const Matrix& X, const std::vector<int>& rows) {
  Matrix out(static_cast<int>(rows.size()), X.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) out.row(static_cast<int>(i)) = X.row(rows[i]);
  return out;
}

IntVector gather(const IntVector& v, const std::vector<int>& rows) {
  IntVector out(static_cast<int>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) out[static_cast<int>(i)] = v[rows[i]];
  return out;
}

Matrix hstack(const Matrix& X, const Vector& col) {
  Matrix out(X.rows(), X.cols() + 1);
  out.leftCols(X.cols()) = X;
  out.col(X.cols()) = col;
  return out;
}

/// Covariates relevant for a target: months_fu1 only feeds the first
/// follow-up task, months_fu2 only the second.
std::vector<std::string> covariates_for_target(const Cohort& cohort, int target) {
  std::vector<std::string> names;
  for (const auto& n : cohort.covariate_names) {
    if (n == "months_fu1" && target != 1) continue;
    if (n == "months_fu2" && target != 2) continue;
    names.push_back(n);
  }
  return names;
}

struct Assembled {
  Matrix X;                     // eligible rows x d, raw (pre-normalization)
  std::vector<int> rows;        // cohort indices of eligible patients
  IntVector target;             // per eligible row
  bool append_intermediate = false;
  Vector intermediate;          // y1_true per eligible row (when appended)
  std::vector<std::string> delta_fallback;
};

Assembled assemble(const Cohort& cohort, ModelName name, bool include_covariates) {
  Assembled a;
  const int target = name == ModelName::baseline_fu1 ? 1 : 2;
  const bool restricted = name == ModelName::radiomics_fu1 || name == ModelName::delta;
  a.rows = restricted ? cohort.fu1_present_indices() : [&] {
    std::vector<int> all(cohort.size());
    for (int i = 0; i < cohort.size(); ++i) all[i] = i;
    return all;
  }();
  if (restricted && a.rows.empty()) {
    throw ValidationError(std::string(to_string(name)) + ": no patients with fu1 features");
  }

  std::vector<Matrix> blocks;
  switch (name) {
    case ModelName::baseline_fu1:
    case ModelName::baseline_fu2:
    case ModelName::longit_true:
    case ModelName::longit_predicted:
    case ModelName::longit_gkde:
      blocks.push_back(gather_rows(cohort.baseline_matrix(), a.rows));
      break;
    case ModelName::labels_only:
      break;  // the intermediate label is the only non-covariate feature
    case ModelName::radiomics_fu1:
      blocks.push_back(gather_rows(cohort.fu1_matrix(), a.rows));
      break;
    case ModelName::delta: {
      if (cohort.n_fu1() == 0) throw ValidationError("delta: cohort has no fu1 features");
      const Matrix base = cohort.baseline_matrix();
      const Matrix fu1 = cohort.fu1_matrix();
      Matrix d(static_cast<int>(a.rows.size()), cohort.n_fu1());
      std::set<std::string> flagged;
      for (int j = 0; j < cohort.n_fu1(); ++j) {
        const std::string suffix = cohort.feature_names_fu1[j].substr(4);  // strip fu1_
        int bj = -1;
        for (int t = 0; t < cohort.n_baseline(); ++t) {
          if (cohort.feature_names_baseline[t] == "base_" + suffix) {
            bj = t;
            break;
          }
        }
        if (bj < 0) {
          throw ValidationError("delta: fu1 feature '" + cohort.feature_names_fu1[j] +
                                "' has no matching base_" + suffix + " column");
        }
        for (std::size_t i = 0; i < a.rows.size(); ++i) {
          const double b = base(a.rows[i], bj);
          const double f = fu1(a.rows[i], j);
          if (std::abs(b) < 1e-12) {
            d(static_cast<int>(i), j) = f - b;  // absolute-change fallback
            flagged.insert(cohort.feature_names_fu1[j]);
          } else {
            d(static_cast<int>(i), j) = (f - b) / b;
          }
        }
      }
      a.delta_fallback.assign(flagged.begin(), flagged.end());
      blocks.push_back(std::move(d));
      break;
    }
  }
  if (include_covariates) {
    const auto cov_names = covariates_for_target(cohort, target);
    if (!cov_names.empty()) blocks.push_back(gather_rows(cohort.covariate_matrix(cov_names), a.rows));
  }

  int d_total = 0;
  for (const auto& b : blocks) d_total += static_cast<int>(b.cols());
  a.X = Matrix(static_cast<int>(a.rows.size()), d_total);
  int off = 0;
  for (const auto& b : blocks) {
    a.X.middleCols(off, b.cols()) = b;
    off += static_cast<int>(b.cols());
  }

  a.target = gather(target == 1 ? cohort.y1() : cohort.y2(), a.rows);
  a.append_intermediate = name == ModelName::labels_only || name == ModelName::longit_true ||
                          name == ModelName::longit_predicted || name == ModelName::longit_gkde;
  if (a.append_intermediate) a.intermediate = gather(cohort.y1(), a.rows).cast<double>();
  return a;
}

/// Plan indices translated into eligible-row positions; splits whose train
/// or test fold vanishes after restriction are dropped.
struct LocalSplit {
  std::vector<int> train, test;
  int split_index = 0;
};

std::vector<LocalSplit> localize(const SplitPlan& plan, const std::vector<int>& rows) {
  std::vector<int> pos(rows.empty() ? 0 : *std::max_element(rows.begin(), rows.end()) + 1, -1);
  for (std::size_t i = 0; i < rows.size(); ++i) pos[rows[i]] = static_cast<int>(i);
  std::vector<LocalSplit> out;
  for (std::size_t s = 0; s < plan.splits.size(); ++s) {
    LocalSplit ls;
    ls.split_index = static_cast<int>(s);
    for (int i : plan.splits[s].train) {
      if (i < static_cast<int>(pos.size()) && pos[i] >= 0) ls.train.push_back(pos[i]);
    }
    for (int i : plan.splits[s].test) {
      if (i < static_cast<int>(pos.size()) && pos[i] >= 0) ls.test.push_back(pos[i]);
    }
    if (!ls.train.empty() && !ls.test.empty()) out.push_back(std::move(ls));
  }
  return out;
}

struct FittedSplit {
  LogisticModel model;
  Matrix test_X;       // normalized test rows, without the appended column
  IntVector test_y;
  std::vector<int> test_local;  // positions into Assembled::rows
};

FittedSplit fit_split(const Assembled& a, const LocalSplit& split, const ImbalanceStrategy& imb,
                      const PipelineContext& ctx, std::uint64_t smote_seed) {
  const Normalizer norm = a.X.cols() > 0 ? fit_normalizer(a.X, split.train)
                                         : Normalizer{Vector(0), Vector(0)};
  Matrix X_train = apply_normalizer(norm, gather_rows(a.X, split.train));
  IntVector y_train = gather(a.target, split.train);
  if (a.append_intermediate) {
    Vector col(static_cast<int>(split.train.size()));
    for (std::size_t i = 0; i < split.train.size(); ++i) col[static_cast<int>(i)] = a.intermediate[split.train[i]];
    X_train = hstack(X_train, col);
  }

  const int n_pos = (y_train.array() == 1).count();
  const bool single_class = n_pos == 0 || n_pos == y_train.size();

  Vector weights = Vector::Ones(y_train.size());
  if (!single_class) {
    switch (imb.kind) {
      case ImbalanceStrategy::Kind::none:
        break;
      case ImbalanceStrategy::Kind::inverse_frequency:
        weights = inverse_frequency_weights(y_train);
        break;
      case ImbalanceStrategy::Kind::smote: {
        ImbalanceStrategy strat = imb;
        strat.seed = smote_seed;
        auto [X_aug, y_aug] = smote_oversample(X_train, y_train, strat);
        X_train = std::move(X_aug);
        y_train = std::move(y_aug);
        weights = Vector::Ones(y_train.size());
        break;
      }
    }
  }

  FittedSplit out;
  out.model = fit_l1_logistic(X_train, y_train, weights, ctx.C, ctx.tol, ctx.max_iter);
  out.test_X = apply_normalizer(norm, gather_rows(a.X, split.test));
  out.test_y = gather(a.target, split.test);
  out.test_local = split.test;
  return out;
}

SkillScores score_fit(const FittedSplit& fit, const Vector* append_col, double threshold,
                      Vector* out_proba = nullptr) {
  const Matrix X = append_col ? hstack(fit.test_X, *append_col) : fit.test_X;
  const Vector proba = predict_proba(fit.model, X);
  IntVector pred(proba.size());
  for (int i = 0; i < proba.size(); ++i) pred[i] = proba[i] >= threshold ? 1 : 0;
  if (out_proba) *out_proba = proba;
  return skill_scores(fit.test_y, pred, proba);
}

bool is_longit(ModelName name) {
  return name == ModelName::longit_true || name == ModelName::longit_predicted ||
         name == ModelName::longit_gkde;
}

SkillScores average_over_samples(const std::vector<SkillScores>& per_sample) {
  SkillScores mean;
  mean.n = per_sample.front().n;
  const double k = static_cast<double>(per_sample.size());
  for (const auto& s : per_sample) {
    mean.accuracy += s.accuracy / k;
    mean.balanced_accuracy += s.balanced_accuracy / k;
    mean.recall += s.recall / k;
    mean.specificity += s.specificity / k;
    mean.roc_auc += s.roc_auc / k;
  }
  return mean;
}

}  // namespace

std::string to_string(ModelName name) { return kModelNames[static_cast<int>(name)]; }

std::optional<ModelName> parse_model_name(const std::string& s) {
  for (int i = 0; i < 8; ++i) {
    if (s == kModelNames[i]) return static_cast<ModelName>(i);
  }
  return std::nullopt;
}

bool ProbaTable::empty() const {
  for (const auto& v : per_patient) {
    if (!v.empty()) return false;
  }
  return true;
}

std::optional<double> ProbaTable::lookup(int patient, int split) const {
  for (const auto& [s, p] : per_patient[patient]) {
    if (s == split) return p;
  }
  return std::nullopt;
}

Vector ProbaTable::probas_of(int patient) const {
  const auto& entries = per_patient[patient];
  Vector out(static_cast<int>(entries.size()));
  for (std::size_t i = 0; i < entries.size(); ++i) out[static_cast<int>(i)] = entries[i].second;
  return out;
}

Step1Result run_step1(const Cohort& cohort, const SplitPlan& plan, const ModelSpec& spec,
                      const PipelineContext& ctx, std::uint64_t smote_seed) {
  if (spec.name != ModelName::baseline_fu1) {
    throw ValidationError("run_step1 expects the baseline_fu1 model spec");
  }
  const Assembled a = assemble(cohort, spec.name, spec.include_covariates);
  const auto splits = localize(plan, a.rows);
  const int n_splits = static_cast<int>(splits.size());

  Step1Result result;
  result.per_split.resize(n_splits);
  result.test_probas.resize(n_splits);
  result.test_y.resize(n_splits);
  std::vector<std::vector<int>> test_rows(n_splits);
  std::vector<char> degenerate(n_splits, 0);

  parallel_for(n_splits, ctx.jobs, [&](int s) {
    const FittedSplit fit = fit_split(a, splits[s], spec.imbalance, ctx,
                                      derive_seed(smote_seed, static_cast<std::uint64_t>(s)));
    Vector proba;
    result.per_split[s] = score_fit(fit, nullptr, ctx.threshold, &proba);
    result.test_probas[s] = proba;
    result.test_y[s] = fit.test_y;
    test_rows[s] = fit.test_local;
    degenerate[s] = fit.model.degenerate ? 1 : 0;
  });

  result.table.per_patient.resize(cohort.size());
  for (int s = 0; s < n_splits; ++s) {
    for (std::size_t i = 0; i < test_rows[s].size(); ++i) {
      const int patient = a.rows[test_rows[s][i]];
      result.table.per_patient[patient].emplace_back(splits[s].split_index,
                                                     result.test_probas[s][static_cast<int>(i)]);
    }
    result.any_degenerate = result.any_degenerate || degenerate[s];
  }
  return result;
}

std::vector<GaussianKde> build_patient_densities(const ProbaTable& table, int min_occurrences) {
  if (table.empty()) throw ValidationError("build_patient_densities: empty probability table");
  std::vector<GaussianKde> out;
  out.reserve(table.per_patient.size());
  for (std::size_t j = 0; j < table.per_patient.size(); ++j) {
    const int count = static_cast<int>(table.per_patient[j].size());
    if (count < min_occurrences) {
      throw ValidationError("patient " + std::to_string(j) + " has " + std::to_string(count) +
                            " recorded probabilities; need >= " + std::to_string(min_occurrences));
    }
    out.push_back(fit_kde(table.probas_of(static_cast<int>(j))));
  }
  return out;
}

SampledLabelMatrix sample_intermediate_labels(const std::vector<GaussianKde>& densities, int k,
                                              double threshold, std::uint64_t seed) {
  if (k < 1) throw ValidationError("sample_intermediate_labels: k must be >= 1");
  SampledLabelMatrix out;
  out.source_seed = seed;
  out.labels.resize(static_cast<int>(densities.size()), k);
  for (std::size_t j = 0; j < densities.size(); ++j) {
    const Vector draws = densities[j].sample(k, derive_seed(seed, static_cast<std::uint64_t>(j)));
    for (int t = 0; t < k; ++t) {
      const double p = std::clamp(draws[t], 0.0, 1.0);
      out.labels(static_cast<int>(j), t) = p >= threshold ? 1 : 0;
    }
  }
  return out;
}

std::map<LabelMode, ModelRunResult> run_longitudinal(
    const Cohort& cohort, const SplitPlan& plan, const ModelSpec& spec,
    const std::vector<LabelMode>& modes, const PipelineContext& ctx, std::uint64_t smote_seed,
    const Step1Result* step1, const SampledLabelMatrix* sampled) {
  const bool want_predicted = std::count(modes.begin(), modes.end(), LabelMode::predicted) > 0;
  const bool want_sampled = std::count(modes.begin(), modes.end(), LabelMode::sampled) > 0;
  if (want_predicted && step1 == nullptr) {
    throw ValidationError("longit_predicted requires the step-1 probability table");
  }
  if (want_sampled && sampled == nullptr) {
    throw ValidationError("longit_gkde requires a sampled label matrix");
  }
  if (want_sampled && sampled->labels.rows() != cohort.size()) {
    throw ValidationError("sampled label matrix does not cover the cohort");
  }

  const Assembled a = assemble(cohort, spec.name, spec.include_covariates);
  const auto splits = localize(plan, a.rows);
  const int n_splits = static_cast<int>(splits.size());

  std::map<LabelMode, ModelRunResult> results;
  std::vector<LabelMode> unique_modes;
  for (LabelMode m : modes) {
    if (results.count(m)) continue;
    results[m].per_split.resize(n_splits);
    results[m].n_splits_used = n_splits;
    unique_modes.push_back(m);
  }
  // Workers write through stable pointers so the map is never touched
  // concurrently.
  std::map<LabelMode, ModelRunResult*> slot;
  for (auto& [m, r] : results) slot[m] = &r;
  std::vector<char> degenerate(n_splits, 0);

  parallel_for(n_splits, ctx.jobs, [&](int s) {
    const FittedSplit fit = fit_split(a, splits[s], spec.imbalance, ctx,
                                      derive_seed(smote_seed, static_cast<std::uint64_t>(s)));
    degenerate[s] = fit.model.degenerate ? 1 : 0;
    const int n_test = static_cast<int>(fit.test_local.size());

    for (LabelMode m : unique_modes) {
      ModelRunResult& out = *slot.find(m)->second;
      if (m == LabelMode::true_labels) {
        Vector col(n_test);
        for (int i = 0; i < n_test; ++i) col[i] = a.intermediate[fit.test_local[i]];
        out.per_split[s] = score_fit(fit, &col, ctx.threshold);
      } else if (m == LabelMode::predicted) {
        Vector col(n_test);
        for (int i = 0; i < n_test; ++i) {
          const int patient = a.rows[fit.test_local[i]];
          const auto p = step1->table.lookup(patient, splits[s].split_index);
          if (!p) {
            throw ValidationError("no step-1 probability for patient " + std::to_string(patient) +
                                  " in split " + std::to_string(splits[s].split_index));
          }
          col[i] = *p >= ctx.threshold ? 1.0 : 0.0;
        }
        out.per_split[s] = score_fit(fit, &col, ctx.threshold);
      } else {
        const int k = static_cast<int>(sampled->labels.cols());
        std::vector<SkillScores> per_sample(k);
        Vector col(n_test);
        for (int t = 0; t < k; ++t) {
          for (int i = 0; i < n_test; ++i) {
            col[i] = static_cast<double>(sampled->labels(a.rows[fit.test_local[i]], t));
          }
          per_sample[t] = score_fit(fit, &col, ctx.threshold);
        }
        out.per_split[s] = average_over_samples(per_sample);
      }
    }
  });

  const bool any_degen = std::count(degenerate.begin(), degenerate.end(), 1) > 0;
  for (auto& [mode, r] : results) r.any_degenerate = any_degen;
  return results;
}

ModelRunResult run_benchmark(const Cohort& cohort, const SplitPlan& plan, const ModelSpec& spec,
                             const PipelineContext& ctx, std::uint64_t smote_seed) {
  if (spec.name == ModelName::longit_true || spec.name == ModelName::longit_predicted ||
      spec.name == ModelName::longit_gkde) {
    throw ValidationError("run_benchmark does not handle longitudinal models");
  }
  const Assembled a = assemble(cohort, spec.name, spec.include_covariates);
  const auto splits = localize(plan, a.rows);
  if (splits.empty()) throw ValidationError(to_string(spec.name) + ": no usable splits after restriction");
  const int n_splits = static_cast<int>(splits.size());

  ModelRunResult result;
  result.per_split.resize(n_splits);
  result.n_splits_used = n_splits;
  result.delta_fallback = a.delta_fallback;
  std::vector<char> degenerate(n_splits, 0);

  parallel_for(n_splits, ctx.jobs, [&](int s) {
    const FittedSplit fit = fit_split(a, splits[s], spec.imbalance, ctx,
                                      derive_seed(smote_seed, static_cast<std::uint64_t>(s)));
    degenerate[s] = fit.model.degenerate ? 1 : 0;
    if (a.append_intermediate) {
      Vector col(static_cast<int>(fit.test_local.size()));
      for (std::size_t i = 0; i < fit.test_local.size(); ++i) {
        col[static_cast<int>(i)] = a.intermediate[fit.test_local[i]];
      }
      result.per_split[s] = score_fit(fit, &col, ctx.threshold);
    } else {
      result.per_split[s] = score_fit(fit, nullptr, ctx.threshold);
    }
  });

  result.any_degenerate = std::count(degenerate.begin(), degenerate.end(), 1) > 0;
  return result;
}

LoocvResult run_loocv(const Cohort& cohort, const std::vector<ModelSpec>& roster,
                      const PipelineContext& ctx, int k_samples, std::uint64_t seed) {
  if (cohort.size() < 3) throw ValidationError("run_loocv: need at least 3 patients");
  LoocvResult result;

  // Per-model pooled held-out probabilities. The baseline_fu1 pass doubles
  // as the probability source for the longitudinal modes (one proba per
  // patient, from the fold that held it out).
  ProbaTable loo_table;
  loo_table.per_patient.resize(cohort.size());
  bool have_table = false;

  auto pooled_eval = [&](const Assembled& a, const ModelSpec& spec, LabelMode mode,
                         std::uint64_t model_seed) -> SkillScores {
    const int n = static_cast<int>(a.rows.size());
    Vector proba(n);
    std::vector<LocalSplit> folds(n);
    for (int i = 0; i < n; ++i) {
      folds[i].split_index = i;
      folds[i].test = {i};
      for (int t = 0; t < n; ++t) {
        if (t != i) folds[i].train.push_back(t);
      }
    }
    SampledLabelMatrix loo_sampled;
    if (mode == LabelMode::sampled) {
      loo_sampled = sample_intermediate_labels(build_patient_densities(loo_table, 1), k_samples,
                                               ctx.threshold, seed);
    }
    Matrix proba_k;  // sampled mode: per-draw probabilities
    if (mode == LabelMode::sampled) proba_k.resize(n, k_samples);

    parallel_for(n, ctx.jobs, [&](int i) {
      const FittedSplit fit = fit_split(a, folds[i], spec.imbalance, ctx,
                                        derive_seed(model_seed, static_cast<std::uint64_t>(i)));
      if (!a.append_intermediate) {
        proba[i] = predict_proba(fit.model, fit.test_X)[0];
        return;
      }
      Vector col(1);
      if (mode == LabelMode::true_labels) {
        col[0] = a.intermediate[i];
        proba[i] = predict_proba(fit.model, hstack(fit.test_X, col))[0];
      } else if (mode == LabelMode::predicted) {
        const auto p = loo_table.lookup(a.rows[i], i);
        if (!p) throw ValidationError("loocv: missing step-1 probability for patient " + std::to_string(a.rows[i]));
        col[0] = *p >= ctx.threshold ? 1.0 : 0.0;
        proba[i] = predict_proba(fit.model, hstack(fit.test_X, col))[0];
      } else {
        for (int t = 0; t < k_samples; ++t) {
          col[0] = static_cast<double>(loo_sampled.labels(a.rows[i], t));
          proba_k(i, t) = predict_proba(fit.model, hstack(fit.test_X, col))[0];
        }
        proba[i] = proba_k.row(i).mean();  // representative value, not used for scoring
      }
    });

    if (spec.name == ModelName::baseline_fu1) {
      for (int i = 0; i < n; ++i) loo_table.per_patient[a.rows[i]] = {{i, proba[i]}};
      have_table = true;
    }
    if (mode == LabelMode::sampled) {
      std::vector<SkillScores> per_sample(k_samples);
      for (int t = 0; t < k_samples; ++t) {
        IntVector pred(n);
        Vector pk = proba_k.col(t);
        for (int i = 0; i < n; ++i) pred[i] = pk[i] >= ctx.threshold ? 1 : 0;
        per_sample[t] = skill_scores(a.target, pred, pk);
      }
      return average_over_samples(per_sample);
    }
    IntVector pred(n);
    for (int i = 0; i < n; ++i) pred[i] = proba[i] >= ctx.threshold ? 1 : 0;
    return skill_scores(a.target, pred, proba);
  };

  // baseline_fu1 first so its table feeds the longitudinal modes.
  std::vector<const ModelSpec*> ordered;
  for (const auto& s : roster) {
    if (s.name == ModelName::baseline_fu1) ordered.push_back(&s);
  }
  for (const auto& s : roster) {
    if (s.name != ModelName::baseline_fu1) ordered.push_back(&s);
  }

  for (std::size_t i = 0; i < ordered.size(); ++i) {
    const ModelSpec& spec = *ordered[i];
    const std::uint64_t model_seed = derive_seed(seed, static_cast<std::uint64_t>(i + 1));
    try {
      if (is_longit(spec.name) && !have_table) {
        throw ValidationError("loocv: baseline_fu1 must be in the roster for longitudinal modes");
      }
      const Assembled a = assemble(cohort, spec.name, spec.include_covariates);
      const LabelMode mode = spec.name == ModelName::longit_predicted  ? LabelMode::predicted
                             : spec.name == ModelName::longit_gkde     ? LabelMode::sampled
                                                                       : LabelMode::true_labels;
      result.scores[to_string(spec.name)] = pooled_eval(a, spec, mode, model_seed);
    } catch (const std::exception& e) {
      result.errors[to_string(spec.name)] = e.what();
    }
  }
  return result;
}

}  // namespace longipred
