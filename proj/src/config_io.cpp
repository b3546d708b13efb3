#include "longipred/config_io.hpp"

#include <fstream>
#include <set>

#include "longipred/errors.hpp"
#include "longipred/io_util.hpp"

namespace longipred {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& j, const std::set<std::string>& known, const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key)) throw ValidationError(where + ": unknown key '" + key + "'");
  }
}

ImbalanceStrategy parse_imbalance(const json& j) {
  ImbalanceStrategy s;
  auto parse_kind = [](const std::string& kind) {
    if (kind == "none") return ImbalanceStrategy::Kind::none;
    if (kind == "inverse_frequency") return ImbalanceStrategy::Kind::inverse_frequency;
    if (kind == "smote") return ImbalanceStrategy::Kind::smote;
    throw ValidationError("imbalance kind must be none, inverse_frequency or smote; got '" + kind + "'");
  };
  if (j.is_string()) {
    s.kind = parse_kind(j.get<std::string>());
    return s;
  }
  reject_unknown_keys(j, {"kind", "smote_k", "smote_target_ratio"}, "imbalance");
  s.kind = parse_kind(j.at("kind").get<std::string>());
  if (j.contains("smote_k")) s.smote_k = j["smote_k"].get<int>();
  if (j.contains("smote_target_ratio")) s.smote_target_ratio = j["smote_target_ratio"].get<double>();
  if (s.smote_k < 1) throw ValidationError("imbalance: smote_k must be >= 1");
  return s;
}

FeatureSource parse_feature_source(const json& j, int n_features) {
  reject_unknown_keys(j, {"kind", "path", "distributions"}, "feature_source");
  const std::string kind = j.at("kind").get<std::string>();
  FeatureSource src;
  if (kind == "seed_samples") {
    src.seed_samples = load_seed_samples(j.at("path").get<std::string>());
    return src;
  }
  if (kind != "parametric") {
    throw ValidationError("feature_source kind must be parametric or seed_samples");
  }
  if (!j.contains("distributions")) return FeatureSource::default_uniform(n_features);
  for (const auto& d : j["distributions"]) {
    reject_unknown_keys(d, {"dist", "a", "b"}, "feature_source distribution");
    ParametricFeature pf;
    const std::string dist = d.at("dist").get<std::string>();
    if (dist == "uniform") {
      pf.dist = ParametricFeature::Dist::uniform;
    } else if (dist == "normal") {
      pf.dist = ParametricFeature::Dist::normal;
    } else if (dist == "bimodal") {
      pf.dist = ParametricFeature::Dist::bimodal;
    } else if (dist == "skewed") {
      pf.dist = ParametricFeature::Dist::skewed;
    } else {
      throw ValidationError("feature distribution must be uniform, normal, bimodal or skewed; got '" +
                            dist + "'");
    }
    if (d.contains("a")) pf.a = d["a"].get<double>();
    if (d.contains("b")) pf.b = d["b"].get<double>();
    src.parametric.push_back(pf);
  }
  return src;
}

SynthConfig parse_synth(const json& j) {
  reject_unknown_keys(j, {"n_patients", "alpha", "seed", "transition", "feature_source"}, "synth");
  SynthConfig s = SynthConfig::defaults();
  s.seed = 0;  // 0 = derive from the master seed
  if (j.contains("n_patients")) s.n_patients = j["n_patients"].get<int>();
  if (j.contains("alpha")) {
    const auto alpha = j["alpha"].get<std::vector<double>>();
    s.alpha = Eigen::Map<const Vector>(alpha.data(), static_cast<int>(alpha.size()));
    if (!j.contains("feature_source")) {
      s.source = FeatureSource::default_uniform(static_cast<int>(alpha.size()));
    }
  }
  if (j.contains("seed")) s.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("transition")) {
    const json& t = j["transition"];
    reject_unknown_keys(t, {"p_extreme_low_to_progressive", "p_moderate_pos_to_stable"}, "transition");
    if (t.contains("p_extreme_low_to_progressive")) {
      s.transition.p_extreme_low_to_progressive = t["p_extreme_low_to_progressive"].get<double>();
    }
    if (t.contains("p_moderate_pos_to_stable")) {
      s.transition.p_moderate_pos_to_stable = t["p_moderate_pos_to_stable"].get<double>();
    }
  }
  if (j.contains("feature_source")) {
    s.source = parse_feature_source(j["feature_source"], static_cast<int>(s.alpha.size()));
  }
  return s;
}

}  // namespace

Matrix load_seed_samples(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open seed-sample file: " + path.string());
  std::string line;
  std::vector<std::vector<double>> rows;
  std::size_t n_cols = 0;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || (line.size() == 1 && line[0] == '\r')) continue;
    const auto fields = split_csv_line(line);
    std::vector<double> row;
    bool numeric = true;
    for (const auto& f : fields) {
      const auto v = parse_double(f);
      if (!v) {
        numeric = false;
        break;
      }
      row.push_back(*v);
    }
    if (!numeric) {
      if (line_no == 1) continue;  // header row
      throw ParseError("seed-sample file: non-numeric cell at line " + std::to_string(line_no));
    }
    if (n_cols == 0) n_cols = row.size();
    if (row.size() != n_cols) {
      throw ParseError("seed-sample file: inconsistent column count at line " + std::to_string(line_no));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("seed-sample file has no data rows: " + path.string());
  Matrix out(static_cast<int>(rows.size()), static_cast<int>(n_cols));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < n_cols; ++j) out(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
  }
  return out;
}

ExperimentConfig parse_experiment_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file: " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError("config JSON parse error: " + std::string(e.what()));
  }
  return parse_experiment_config_json(j);
}

ExperimentConfig parse_experiment_config_json(const json& j) {
  reject_unknown_keys(j,
                      {"dataset", "models", "n_splits", "test_fraction", "k_samples", "threshold",
                       "C", "min_occurrences", "seed", "covariate_columns", "out_dir", "jobs",
                       "loocv"},
                      "config");
  ExperimentConfig config;
  if (!j.contains("dataset")) throw ValidationError("config: missing 'dataset'");
  const json& ds = j["dataset"];
  reject_unknown_keys(ds, {"path", "synth"}, "dataset");
  if (ds.contains("path") == ds.contains("synth")) {
    throw ValidationError("dataset: exactly one of 'path' or 'synth' is required");
  }
  if (ds.contains("path")) {
    config.dataset.is_synth = false;
    config.dataset.path = ds["path"].get<std::string>();
  } else {
    config.dataset.is_synth = true;
    config.dataset.synth = parse_synth(ds["synth"]);
  }

  if (j.contains("n_splits")) config.n_splits = j["n_splits"].get<int>();
  if (j.contains("test_fraction")) config.test_fraction = j["test_fraction"].get<double>();
  if (j.contains("k_samples")) config.k_samples = j["k_samples"].get<int>();
  if (j.contains("threshold")) config.threshold = j["threshold"].get<double>();
  if (j.contains("C")) config.C = j["C"].get<double>();
  if (j.contains("min_occurrences")) config.min_occurrences = j["min_occurrences"].get<int>();
  if (j.contains("seed")) config.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("covariate_columns")) {
    config.covariate_columns = j["covariate_columns"].get<std::vector<std::string>>();
  }
  if (j.contains("out_dir")) config.out_dir = j["out_dir"].get<std::string>();
  if (j.contains("jobs")) config.jobs = j["jobs"].get<int>();
  if (j.contains("loocv")) config.loocv = j["loocv"].get<bool>();

  if (j.contains("models")) {
    for (const auto& m : j["models"]) {
      ModelSpec spec;
      std::string name;
      if (m.is_string()) {
        name = m.get<std::string>();
        const auto parsed = parse_model_name(name);
        if (!parsed) throw ValidationError("unknown model '" + name + "'");
        spec.name = *parsed;
        spec.imbalance = config.dataset.is_synth || spec.name == ModelName::baseline_fu1
                             ? ImbalanceStrategy{ImbalanceStrategy::Kind::inverse_frequency}
                             : ImbalanceStrategy{ImbalanceStrategy::Kind::smote};
      } else {
        reject_unknown_keys(m, {"name", "imbalance", "include_covariates"}, "model");
        name = m.at("name").get<std::string>();
        const auto parsed = parse_model_name(name);
        if (!parsed) throw ValidationError("unknown model '" + name + "'");
        spec.name = *parsed;
        if (m.contains("imbalance")) {
          spec.imbalance = parse_imbalance(m["imbalance"]);
        } else {
          spec.imbalance = config.dataset.is_synth || spec.name == ModelName::baseline_fu1
                               ? ImbalanceStrategy{ImbalanceStrategy::Kind::inverse_frequency}
                               : ImbalanceStrategy{ImbalanceStrategy::Kind::smote};
        }
        if (m.contains("include_covariates")) {
          spec.include_covariates = m["include_covariates"].get<bool>();
        }
      }
      config.models.push_back(spec);
    }
  }
  return config;
}

nlohmann::json config_to_json(const ExperimentConfig& config) {
  json j;
  if (config.dataset.is_synth) {
    const SynthConfig& s = config.dataset.synth;
    json synth;
    synth["n_patients"] = s.n_patients;
    synth["alpha"] = std::vector<double>(s.alpha.data(), s.alpha.data() + s.alpha.size());
    synth["seed"] = s.seed;
    synth["transition"] = {
        {"p_extreme_low_to_progressive", s.transition.p_extreme_low_to_progressive},
        {"p_moderate_pos_to_stable", s.transition.p_moderate_pos_to_stable}};
    if (s.source.uses_seed_samples()) {
      synth["feature_source"] = {{"kind", "seed_samples"},
                                 {"n_rows", s.source.seed_samples.rows()},
                                 {"n_features", s.source.seed_samples.cols()}};
    } else {
      json dists = json::array();
      for (const auto& pf : s.source.parametric) {
        const char* name = pf.dist == ParametricFeature::Dist::uniform   ? "uniform"
                           : pf.dist == ParametricFeature::Dist::normal  ? "normal"
                           : pf.dist == ParametricFeature::Dist::bimodal ? "bimodal"
                                                                         : "skewed";
        dists.push_back({{"dist", name}, {"a", pf.a}, {"b", pf.b}});
      }
      synth["feature_source"] = {{"kind", "parametric"}, {"distributions", dists}};
    }
    j["dataset"] = {{"synth", synth}};
  } else {
    j["dataset"] = {{"path", config.dataset.path}};
  }

  json models = json::array();
  for (const auto& spec : config.models) {
    const char* kind = spec.imbalance.kind == ImbalanceStrategy::Kind::none ? "none"
                       : spec.imbalance.kind == ImbalanceStrategy::Kind::inverse_frequency
                           ? "inverse_frequency"
                           : "smote";
    json m = {{"name", to_string(spec.name)},
              {"imbalance", {{"kind", kind}}},
              {"include_covariates", spec.include_covariates}};
    if (spec.imbalance.kind == ImbalanceStrategy::Kind::smote) {
      m["imbalance"]["smote_k"] = spec.imbalance.smote_k;
      m["imbalance"]["smote_target_ratio"] = spec.imbalance.smote_target_ratio;
    }
    models.push_back(m);
  }
  j["models"] = models;
  j["n_splits"] = config.n_splits;
  j["test_fraction"] = config.test_fraction;
  j["k_samples"] = config.k_samples;
  j["threshold"] = config.threshold;
  j["C"] = config.C;
  j["min_occurrences"] = config.min_occurrences;
  j["seed"] = config.seed;
  j["covariate_columns"] = config.covariate_columns;
  j["out_dir"] = config.out_dir;
  j["loocv"] = config.loocv;
  return j;
}

}  // namespace longipred
