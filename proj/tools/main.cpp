#include <CLI11.hpp>

#include "longipred/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"longipred: probabilistic longitudinal response prediction"};
  app.require_subcommand(1);

  std::string config_path, out_path;
  std::uint64_t seed = 0;
  int jobs = 0;

  auto* synth = app.add_subcommand("synth", "generate the synthetic cohort CSV");
  auto* synth_config = synth->add_option("--config", config_path, "experiment config JSON");
  synth->add_option("--out", out_path, "output cohort CSV path")->default_val("cohort.csv");
  auto* synth_seed = synth->add_option("--seed", seed, "override the master seed");

  auto* run = app.add_subcommand("run", "run the configured experiment");
  run->add_option("--config", config_path, "experiment config JSON")->required();
  auto* run_out = run->add_option("--out", out_path, "output directory (overrides config)");
  auto* run_seed = run->add_option("--seed", seed, "override the master seed");
  auto* run_jobs = run->add_option("--jobs", jobs, "worker threads for split-level parallelism");

  auto* validate = app.add_subcommand("validate", "dry-run config and dataset diagnostics");
  validate->add_option("--config", config_path, "experiment config JSON")->required();

  CLI11_PARSE(app, argc, argv);

  if (synth->parsed()) {
    return longipred::cmd_synth(
        synth_config->count() ? std::optional<std::string>(config_path) : std::nullopt, out_path,
        synth_seed->count() ? std::optional<std::uint64_t>(seed) : std::nullopt);
  }
  if (run->parsed()) {
    return longipred::cmd_run(
        config_path, run_out->count() ? std::optional<std::string>(out_path) : std::nullopt,
        run_seed->count() ? std::optional<std::uint64_t>(seed) : std::nullopt,
        run_jobs->count() ? std::optional<int>(jobs) : std::nullopt);
  }
  return longipred::cmd_validate(config_path);
}
