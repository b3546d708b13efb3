#include "longipred/experiment.hpp"

#include <algorithm>
#include <set>

#include "longipred/errors.hpp"
#include "longipred/rng.hpp"

namespace longipred {

namespace {

// Seed streams off the master seed.
constexpr std::uint64_t kStreamSynth = 0;
constexpr std::uint64_t kStreamPlan = 1;
constexpr std::uint64_t kStreamSampledLabels = 2;
constexpr std::uint64_t kStreamLoocv = 3;
constexpr std::uint64_t kStreamModelBase = 16;

ImbalanceStrategy default_imbalance(bool is_synth, ModelName name) {
  ImbalanceStrategy s;
  if (is_synth || name == ModelName::baseline_fu1) {
    s.kind = ImbalanceStrategy::Kind::inverse_frequency;
  } else {
    s.kind = ImbalanceStrategy::Kind::smote;
  }
  return s;
}

std::vector<ModelSpec> default_roster(bool is_synth) {
  std::vector<ModelName> names;
  if (is_synth) {
    names = {ModelName::baseline_fu1, ModelName::baseline_fu2,     ModelName::labels_only,
             ModelName::longit_true,  ModelName::longit_predicted, ModelName::longit_gkde};
  } else {
    names = {ModelName::baseline_fu1,  ModelName::baseline_fu2,     ModelName::labels_only,
             ModelName::radiomics_fu1, ModelName::delta,            ModelName::longit_true,
             ModelName::longit_predicted, ModelName::longit_gkde};
  }
  std::vector<ModelSpec> roster;
  for (ModelName n : names) {
    roster.push_back({n, default_imbalance(is_synth, n), true});
  }
  return roster;
}

LabelMode mode_of(ModelName name) {
  switch (name) {
    case ModelName::longit_true:
      return LabelMode::true_labels;
    case ModelName::longit_predicted:
      return LabelMode::predicted;
    default:
      return LabelMode::sampled;
  }
}

bool is_longitudinal(ModelName name) {
  return name == ModelName::longit_true || name == ModelName::longit_predicted ||
         name == ModelName::longit_gkde;
}

CalibrationEntry mean_std(const std::vector<double>& brier, const std::vector<double>& ll) {
  auto stats = [](const std::vector<double>& v) {
    const int m = static_cast<int>(v.size());
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= m;
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return std::pair<double, double>{mean, m > 1 ? std::sqrt(ss / (m - 1)) : 0.0};
  };
  CalibrationEntry e;
  std::tie(e.brier_mean, e.brier_std) = stats(brier);
  std::tie(e.log_loss_mean, e.log_loss_std) = stats(ll);
  return e;
}

}  // namespace

ExperimentConfig resolve_config(const ExperimentConfig& config) {
  ExperimentConfig r = config;
  if (r.dataset.is_synth && r.dataset.synth.alpha.size() == 0) {
    const auto defaults = SynthConfig::defaults();
    r.dataset.synth.alpha = defaults.alpha;
    r.dataset.synth.source = defaults.source;
  }
  if (r.dataset.is_synth && r.dataset.synth.seed == 0) {
    r.dataset.synth.seed = derive_seed(r.seed, kStreamSynth);
  }
  if (r.n_splits == 0) r.n_splits = r.dataset.is_synth ? 230 : 40;
  if (r.models.empty()) r.models = default_roster(r.dataset.is_synth);

  std::set<ModelName> seen;
  for (const auto& spec : r.models) {
    if (!seen.insert(spec.name).second) {
      throw ValidationError("model '" + to_string(spec.name) + "' listed twice");
    }
  }
  if (r.k_samples < 1) throw ValidationError("k_samples must be >= 1");
  if (!(r.test_fraction > 0.0 && r.test_fraction < 1.0)) {
    throw ValidationError("test_fraction must be in (0, 1)");
  }
  if (!(r.threshold > 0.0 && r.threshold < 1.0)) {
    throw ValidationError("threshold must be in (0, 1)");
  }
  if (!(r.C > 0.0)) throw ValidationError("C must be positive");
  if (r.min_occurrences < 0) throw ValidationError("min_occurrences must be >= 0");
  if (r.jobs < 1) r.jobs = 1;
  return r;
}

Cohort load_dataset(const ExperimentConfig& config) {
  if (config.dataset.is_synth) return generate(config.dataset.synth);
  ColumnSchema schema;
  schema.covariate_columns = config.covariate_columns;
  return load_cohort(config.dataset.path, schema);
}

ExperimentReport run_experiment(const ExperimentConfig& raw_config) {
  const ExperimentConfig config = resolve_config(raw_config);
  const Cohort cohort = load_dataset(config);

  ExperimentReport report;
  report.config = config;
  report.seeds["master"] = config.seed;
  if (config.dataset.is_synth) report.seeds["synth"] = config.dataset.synth.seed;
  report.seeds["plan"] = derive_seed(config.seed, kStreamPlan);
  report.seeds["sampled_labels"] = derive_seed(config.seed, kStreamSampledLabels);

  const SplitPlan plan = make_splits(cohort, config.n_splits, config.test_fraction,
                                     report.seeds["plan"], config.min_occurrences);

  PipelineContext ctx;
  ctx.C = config.C;
  ctx.threshold = config.threshold;
  ctx.jobs = config.jobs;

  // Step 1 runs first: the longitudinal models and the calibration analysis
  // both consume its probability table. If absent from the roster it still
  // runs (with dataset defaults) but is not reported.
  int step1_index = -1;
  for (std::size_t i = 0; i < config.models.size(); ++i) {
    if (config.models[i].name == ModelName::baseline_fu1) step1_index = static_cast<int>(i);
  }
  const bool needs_step1 =
      step1_index >= 0 ||
      std::any_of(config.models.begin(), config.models.end(),
                  [](const ModelSpec& s) { return is_longitudinal(s.name); });

  std::map<std::string, ModelReport> finished;
  auto record_failure = [&](const ModelSpec& spec, const std::string& what) {
    ModelReport r;
    r.name = to_string(spec.name);
    r.ok = false;
    r.error = what;
    finished[r.name] = std::move(r);
  };
  auto record_result = [&](const ModelSpec& spec, const ModelRunResult& run) {
    ModelReport r;
    r.name = to_string(spec.name);
    r.summary = summarize_across_splits(run.per_split);
    r.n_splits_used = run.n_splits_used;
    r.any_degenerate = run.any_degenerate;
    r.delta_fallback = run.delta_fallback;
    r.ok = true;
    finished[r.name] = std::move(r);
  };

  Step1Result step1;
  bool step1_ok = false;
  std::string step1_error;
  SampledLabelMatrix sampled;
  bool sampled_ok = false;

  if (needs_step1) {
    ModelSpec spec = step1_index >= 0 ? config.models[step1_index]
                                      : ModelSpec{ModelName::baseline_fu1,
                                                  default_imbalance(config.dataset.is_synth,
                                                                    ModelName::baseline_fu1),
                                                  true};
    const std::uint64_t smote_seed = derive_seed(
        config.seed, kStreamModelBase + (step1_index >= 0 ? step1_index : config.models.size()));
    report.seeds["model_baseline_fu1"] = smote_seed;
    try {
      step1 = run_step1(cohort, plan, spec, ctx, smote_seed);
      step1_ok = true;
      if (step1_index >= 0) {
        ModelRunResult as_run;
        as_run.per_split = step1.per_split;
        as_run.n_splits_used = static_cast<int>(step1.per_split.size());
        as_run.any_degenerate = step1.any_degenerate;
        record_result(spec, as_run);
      }
    } catch (const std::exception& e) {
      step1_error = e.what();
      if (step1_index >= 0) record_failure(spec, step1_error);
    }
  }

  if (step1_ok) {
    // Calibration of f1, fit per split on its own test fold (matching the
    // source protocol; the leakage is intentional and noted in the report).
    std::vector<double> brier_raw, ll_raw, brier_iso, ll_iso;
    Vector pooled_raw(0), pooled_iso(0);
    IntVector pooled_y(0);
    for (std::size_t s = 0; s < step1.test_probas.size(); ++s) {
      const Vector& p = step1.test_probas[s];
      const IntVector& y = step1.test_y[s];
      brier_raw.push_back(brier_score(p, y));
      ll_raw.push_back(log_loss(p, y));
      const IsotonicMap map = fit_isotonic(p, y);
      const Vector pc = apply_isotonic(map, p);
      brier_iso.push_back(brier_score(pc, y));
      ll_iso.push_back(log_loss(pc, y));
      const int off = static_cast<int>(pooled_raw.size());
      pooled_raw.conservativeResize(off + p.size());
      pooled_iso.conservativeResize(off + p.size());
      pooled_y.conservativeResize(off + p.size());
      pooled_raw.segment(off, p.size()) = p;
      pooled_iso.segment(off, p.size()) = pc;
      pooled_y.segment(off, p.size()) = y;
    }
    report.calibration_raw = mean_std(brier_raw, ll_raw);
    report.calibration_isotonic = mean_std(brier_iso, ll_iso);
    report.reliability_raw = reliability_curve(pooled_raw, pooled_y);
    report.reliability_isotonic = reliability_curve(pooled_iso, pooled_y);
    report.has_calibration = true;
    report.proba_table = step1.table;

    try {
      report.densities = build_patient_densities(step1.table, config.min_occurrences);
      sampled = sample_intermediate_labels(report.densities, config.k_samples, config.threshold,
                                           report.seeds["sampled_labels"]);
      sampled_ok = true;
    } catch (const std::exception& e) {
      step1_error = e.what();  // downstream gkde model will report this
    }
  }

  // Benchmarks, then the longitudinal family (one shared fit per split for
  // all modes that use the same spec).
  std::vector<std::pair<ModelSpec, std::vector<LabelMode>>> longit_groups;
  for (std::size_t i = 0; i < config.models.size(); ++i) {
    const ModelSpec& spec = config.models[i];
    const std::uint64_t smote_seed = derive_seed(config.seed, kStreamModelBase + i);
    if (spec.name != ModelName::baseline_fu1) {
      report.seeds["model_" + to_string(spec.name)] = smote_seed;
    }
    if (spec.name == ModelName::baseline_fu1) continue;
    if (is_longitudinal(spec.name)) {
      bool grouped = false;
      for (auto& [gspec, modes] : longit_groups) {
        if (gspec.imbalance.kind == spec.imbalance.kind &&
            gspec.imbalance.smote_k == spec.imbalance.smote_k &&
            gspec.imbalance.smote_target_ratio == spec.imbalance.smote_target_ratio &&
            gspec.include_covariates == spec.include_covariates) {
          modes.push_back(mode_of(spec.name));
          grouped = true;
          break;
        }
      }
      if (!grouped) longit_groups.push_back({spec, {mode_of(spec.name)}});
      continue;
    }
    try {
      record_result(spec, run_benchmark(cohort, plan, spec, ctx, smote_seed));
    } catch (const std::exception& e) {
      record_failure(spec, e.what());
    }
  }

  for (auto& [gspec, modes] : longit_groups) {
    // All modes of a group share one smote stream: the trained models are
    // identical by construction, so the stream is keyed on the group spec.
    std::uint64_t group_seed = 0;
    for (std::size_t i = 0; i < config.models.size(); ++i) {
      if (is_longitudinal(config.models[i].name) && mode_of(config.models[i].name) == modes.front()) {
        group_seed = derive_seed(config.seed, kStreamModelBase + i);
        break;
      }
    }
    auto spec_for_mode = [&](LabelMode m) {
      ModelSpec spec = gspec;
      spec.name = m == LabelMode::true_labels ? ModelName::longit_true
                  : m == LabelMode::predicted ? ModelName::longit_predicted
                                              : ModelName::longit_gkde;
      return spec;
    };
    // Modes whose inputs are unavailable fail individually; the rest still run.
    std::vector<LabelMode> runnable;
    for (LabelMode m : modes) {
      if (m == LabelMode::predicted && !step1_ok) {
        record_failure(spec_for_mode(m), "step-1 model failed: " + step1_error);
      } else if (m == LabelMode::sampled && !sampled_ok) {
        record_failure(spec_for_mode(m), (step1_ok ? "intermediate label sampling failed: "
                                                   : "step-1 model failed: ") +
                                             step1_error);
      } else {
        runnable.push_back(m);
      }
    }
    if (runnable.empty()) continue;
    auto fail_group = [&](const std::string& why) {
      for (LabelMode m : runnable) record_failure(spec_for_mode(m), why);
    };
    try {
      auto results = run_longitudinal(cohort, plan, gspec, runnable, ctx, group_seed,
                                      step1_ok ? &step1 : nullptr, sampled_ok ? &sampled : nullptr);
      for (auto& [mode, run] : results) {
        ModelName name = mode == LabelMode::true_labels ? ModelName::longit_true
                         : mode == LabelMode::predicted ? ModelName::longit_predicted
                                                        : ModelName::longit_gkde;
        ModelSpec spec = gspec;
        spec.name = name;
        try {
          record_result(spec, run);
        } catch (const std::exception& e) {
          record_failure(spec, e.what());
        }
      }
    } catch (const std::exception& e) {
      fail_group(e.what());
    }
  }

  for (const auto& spec : config.models) {
    const auto it = finished.find(to_string(spec.name));
    if (it != finished.end()) report.models.push_back(it->second);
  }

  // Cohort snapshot for the plot files.
  report.patient_ids.reserve(cohort.size());
  for (const auto& p : cohort.patients) report.patient_ids.push_back(p.patient_id);
  report.y1 = cohort.y1();
  report.y2 = cohort.y2();
  report.transition = transition_matrix(cohort);
  if (cohort.size() >= 3 && cohort.n_baseline() >= 2) {
    std::vector<int> all(cohort.size());
    for (int i = 0; i < cohort.size(); ++i) all[i] = i;
    const Matrix base = cohort.baseline_matrix();
    const Matrix scaled = apply_normalizer(fit_normalizer(base, all), base);
    const PcaResult pca = pca_project(scaled);
    report.pca_projection = pca.projection;
    report.pca_explained = pca.explained_variance;
  }

  if (config.loocv) {
    report.seeds["loocv_sampled_labels"] = derive_seed(config.seed, kStreamLoocv);
    const LoocvResult loocv = run_loocv(cohort, config.models, ctx, config.k_samples,
                                        report.seeds["loocv_sampled_labels"]);
    for (const auto& spec : config.models) {
      const auto it = loocv.scores.find(to_string(spec.name));
      if (it != loocv.scores.end()) report.loocv_scores.push_back(*it);
    }
    report.has_loocv = true;
  }

  return report;
}

}  // namespace longipred
