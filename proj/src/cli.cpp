#include "longipred/cli.hpp"

#include <array>
#include <cmath>
#include <iostream>

#include "longipred/config_io.hpp"
#include "longipred/errors.hpp"
#include "longipred/io_util.hpp"
#include "longipred/report_io.hpp"
#include "longipred/rng.hpp"

namespace longipred {

namespace {

void print_transition(const Eigen::Matrix2i& t) {
  std::cout << "transition counts (rows y1, cols y2):\n";
  std::cout << "        y2=0  y2=1\n";
  for (int i = 0; i < 2; ++i) {
    std::cout << "  y1=" << i << "  " << t(i, 0) << "     " << t(i, 1) << '\n';
  }
}

ExperimentConfig load_config_or_default_synth(const std::optional<std::string>& config_path) {
  if (config_path) return parse_experiment_config(*config_path);
  ExperimentConfig config;
  config.dataset.is_synth = true;
  config.dataset.synth = SynthConfig::defaults();
  config.dataset.synth.seed = 0;  // derive from master
  return config;
}

}  // namespace

int cmd_synth(const std::optional<std::string>& config_path, const std::string& out_path,
              std::optional<std::uint64_t> seed_override) {
  try {
    ExperimentConfig config = load_config_or_default_synth(config_path);
    if (!config.dataset.is_synth) {
      std::cerr << "error: synth requires a config with a synthetic dataset\n";
      return 1;
    }
    if (seed_override) {
      config.seed = *seed_override;
      config.dataset.synth.seed = 0;  // re-derive from the overridden master
    }
    config = resolve_config(config);
    const Cohort cohort = generate(config.dataset.synth);
    write_cohort(cohort, out_path);
    std::cout << "wrote " << cohort.size() << " patients to " << out_path << '\n';
    print_transition(transition_matrix(cohort));
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

int cmd_run(const std::string& config_path, const std::optional<std::string>& out_dir,
            std::optional<std::uint64_t> seed_override, std::optional<int> jobs_override) {
  ExperimentConfig config;
  try {
    config = parse_experiment_config(config_path);
    if (seed_override) {
      config.seed = *seed_override;
      if (config.dataset.is_synth) config.dataset.synth.seed = 0;
    }
    if (out_dir) config.out_dir = *out_dir;
    if (jobs_override) config.jobs = *jobs_override;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }

  ExperimentReport report;
  try {
    report = run_experiment(config);
    write_report_files(report, report.config.out_dir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }

  int n_ok = 0;
  for (const auto& m : report.models) {
    if (m.ok) {
      ++n_ok;
      std::cout << m.name << ": balanced_accuracy " << format_double(m.summary.balanced_accuracy.mean)
                << "  roc_auc " << format_double(m.summary.roc_auc.mean) << "  (" << m.n_splits_used
                << " splits)\n";
    } else {
      std::cout << m.name << ": FAILED (" << m.error << ")\n";
    }
  }
  std::cout << "report written to " << report.config.out_dir << '\n';
  return n_ok > 0 ? 0 : 2;
}

int cmd_validate(const std::string& config_path) {
  int n_fatal = 0;
  auto fatal = [&](const std::string& msg) {
    std::cout << "fatal: " << msg << '\n';
    ++n_fatal;
  };
  auto warn = [&](const std::string& msg) { std::cout << "warn: " << msg << '\n'; };

  ExperimentConfig config;
  try {
    config = resolve_config(parse_experiment_config(config_path));
  } catch (const std::exception& e) {
    fatal(e.what());
    return 1;
  }

  Cohort cohort;
  try {
    cohort = load_dataset(config);
  } catch (const std::exception& e) {
    fatal(std::string("dataset: ") + e.what());
    return 1;
  }
  std::cout << "dataset: " << cohort.size() << " patients, " << cohort.n_baseline()
            << " baseline features, " << cohort.n_fu1() << " fu1 features, "
            << cohort.fu1_present_indices().size() << " patients with fu1\n";

  // Joint strata and split feasibility.
  std::array<int, 4> strata{0, 0, 0, 0};
  for (const auto& p : cohort.patients) ++strata[2 * p.y1 + p.y2];
  for (int s = 0; s < 4; ++s) {
    if (strata[s] == 1) {
      fatal("stratum (y1=" + std::to_string(s / 2) + ", y2=" + std::to_string(s % 2) +
            ") has a single patient; stratified splitting needs >= 2");
    }
  }
  for (int s = 0; s < 4; ++s) {
    if (strata[s] < 2) continue;
    const int n_test = static_cast<int>(std::llround(config.test_fraction * strata[s]));
    const double expected = static_cast<double>(config.n_splits) * n_test / strata[s];
    if (n_test == 0 || expected < config.min_occurrences) {
      fatal("stratum (y1=" + std::to_string(s / 2) + ", y2=" + std::to_string(s % 2) + "): expected " +
            format_double(expected) + " test occurrences per patient < min_occurrences " +
            std::to_string(config.min_occurrences));
    } else if (expected < 1.5 * config.min_occurrences) {
      warn("stratum (y1=" + std::to_string(s / 2) + ", y2=" + std::to_string(s % 2) +
           "): min_occurrences may need plan redraws (expected " + format_double(expected) + ")");
    }
  }

  for (const auto& spec : config.models) {
    if (spec.name != ModelName::radiomics_fu1 && spec.name != ModelName::delta) continue;
    if (cohort.n_fu1() == 0) {
      fatal(to_string(spec.name) + " requested but the cohort has no fu1_ columns");
      continue;
    }
    if (cohort.fu1_present_indices().size() < 4) {
      fatal(to_string(spec.name) + " requested but only " +
            std::to_string(cohort.fu1_present_indices().size()) + " patients carry fu1 features");
    }
    if (spec.name == ModelName::delta) {
      for (const auto& fn : cohort.feature_names_fu1) {
        const std::string want = "base_" + fn.substr(4);
        bool found = false;
        for (const auto& bn : cohort.feature_names_baseline) found = found || bn == want;
        if (!found) fatal("delta: fu1 feature '" + fn + "' has no matching '" + want + "' column");
      }
    }
  }

  if (n_fatal == 0) {
    std::cout << "ok\n";
    return 0;
  }
  return 1;
}

}  // namespace longipred
