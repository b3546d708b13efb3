#include "longipred/report_io.hpp"

#include <cmath>
#include <fstream>

#include "longipred/config_io.hpp"
#include "longipred/errors.hpp"
#include "longipred/io_util.hpp"

namespace longipred {

namespace {

using nlohmann::json;

json metric_json(const MetricSummary& m) {
  return {{"mean", m.mean}, {"ci_low", m.ci_low}, {"ci_high", m.ci_high}, {"n_used", m.n_used}};
}

json summary_json(const ScoreSummary& s) {
  return {{"accuracy", metric_json(s.accuracy)},
          {"balanced_accuracy", metric_json(s.balanced_accuracy)},
          {"recall", metric_json(s.recall)},
          {"specificity", metric_json(s.specificity)},
          {"roc_auc", metric_json(s.roc_auc)},
          {"n_splits", s.n_splits}};
}

json calibration_json(const CalibrationEntry& e) {
  return {{"brier_mean", e.brier_mean},
          {"brier_std", e.brier_std},
          {"log_loss_mean", e.log_loss_mean},
          {"log_loss_std", e.log_loss_std}};
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path.string());
  return out;
}

}  // namespace

json report_to_json(const ExperimentReport& report) {
  json j;
  j["artifact"] = {{"name", "longipred"}, {"version", "0.1.0"}};
  j["config"] = config_to_json(report.config);

  json seeds;
  for (const auto& [name, seed] : report.seeds) seeds[name] = seed;
  j["seeds"] = seeds;

  json models = json::array();
  for (const auto& m : report.models) {
    json jm;
    jm["name"] = m.name;
    jm["ok"] = m.ok;
    if (m.ok) {
      jm["scores"] = summary_json(m.summary);
      jm["n_splits_used"] = m.n_splits_used;
      jm["any_degenerate_fit"] = m.any_degenerate;
      if (!m.delta_fallback.empty()) jm["delta_absolute_change_features"] = m.delta_fallback;
    } else {
      jm["error"] = m.error;
    }
    models.push_back(jm);
  }
  j["models"] = models;

  if (report.has_calibration) {
    j["calibration"] = {{"model", "baseline_fu1"},
                        {"raw", calibration_json(report.calibration_raw)},
                        {"isotonic", calibration_json(report.calibration_isotonic)}};
  }

  j["transition_matrix"] = {{report.transition(0, 0), report.transition(0, 1)},
                            {report.transition(1, 0), report.transition(1, 1)}};
  if (report.pca_projection.size() > 0) {
    j["pca_explained_variance"] = {report.pca_explained[0], report.pca_explained[1]};
  }

  if (report.has_loocv) {
    json loocv;
    for (const auto& [name, s] : report.loocv_scores) {
      loocv[name] = {{"accuracy", s.accuracy},
                     {"balanced_accuracy", s.balanced_accuracy},
                     {"recall", s.recall},
                     {"specificity", s.specificity},
                     {"roc_auc", s.roc_auc},
                     {"n", s.n}};
    }
    j["loocv"] = loocv;
  }

  j["notes"] = {
      {"ci_method", "normal approximation across splits: mean +- 1.96*sd/sqrt(m), sd with m-1"},
      {"calibration_protocol",
       "isotonic calibrators are fit on each split's own test fold, mirroring the evaluation "
       "protocol of the source experiments; this reuses test data by design"}};
  return j;
}

void write_report_files(const ExperimentReport& report, const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);

  {
    auto out = open_out(out_dir / "report.json");
    out << report_to_json(report).dump(2) << '\n';
  }

  {
    auto out = open_out(out_dir / "scores.csv");
    out << "model,metric,mean,ci_low,ci_high,n_used\n";
    const std::pair<const char*, MetricSummary ScoreSummary::*> metrics[] = {
        {"accuracy", &ScoreSummary::accuracy},
        {"balanced_accuracy", &ScoreSummary::balanced_accuracy},
        {"recall", &ScoreSummary::recall},
        {"specificity", &ScoreSummary::specificity},
        {"roc_auc", &ScoreSummary::roc_auc}};
    for (const auto& m : report.models) {
      if (!m.ok) continue;
      for (const auto& [label, field] : metrics) {
        const MetricSummary& ms = m.summary.*field;
        out << m.name << ',' << label << ',' << format_double(ms.mean) << ','
            << format_double(ms.ci_low) << ',' << format_double(ms.ci_high) << ',' << ms.n_used
            << '\n';
      }
    }
  }

  if (report.has_calibration) {
    auto out = open_out(out_dir / "calibration.csv");
    out << "model,variant,brier_mean,brier_std,log_loss_mean,log_loss_std\n";
    const std::pair<const char*, const CalibrationEntry*> rows[] = {
        {"raw", &report.calibration_raw}, {"isotonic", &report.calibration_isotonic}};
    for (const auto& [variant, e] : rows) {
      out << "baseline_fu1," << variant << ',' << format_double(e->brier_mean) << ','
          << format_double(e->brier_std) << ',' << format_double(e->log_loss_mean) << ','
          << format_double(e->log_loss_std) << '\n';
    }

    auto write_reliability = [&](const ReliabilityCurve& curve, const std::string& filename) {
      auto rout = open_out(out_dir / filename);
      rout << "bin_mean_predicted,fraction_positive,count\n";
      for (const auto& b : curve.bins) {
        rout << format_double(b.mean_predicted) << ',' << format_double(b.fraction_positive) << ','
             << b.count << '\n';
      }
    };
    write_reliability(report.reliability_raw, "reliability_baseline_fu1.csv");
    write_reliability(report.reliability_isotonic, "reliability_baseline_fu1_isotonic.csv");
  }

  {
    // Histogram source (one row per recorded test probability) plus the KDE
    // evaluated on a fixed grid, per patient.
    auto out = open_out(out_dir / "patient_probas.csv");
    out << "patient_id,record,x,value\n";
    const bool have_kdes = !report.densities.empty();
    for (std::size_t p = 0; p < report.proba_table.per_patient.size(); ++p) {
      const std::string& id = report.patient_ids[p];
      for (const auto& [split, proba] : report.proba_table.per_patient[p]) {
        out << id << ",proba," << split << ',' << format_double(proba) << '\n';
      }
      if (have_kdes) {
        for (int g = 0; g <= 140; ++g) {
          const double x = (g - 20) / 100.0;  // grid over [-0.2, 1.2]
          out << id << ",pdf," << format_double(x) << ','
              << format_double(report.densities[p].pdf(x)) << '\n';
        }
      }
    }
  }

  {
    auto out = open_out(out_dir / "pca.csv");
    out << "patient_id,pc1,pc2,y1,y2\n";
    if (report.pca_projection.rows() == static_cast<int>(report.patient_ids.size())) {
      for (int i = 0; i < report.pca_projection.rows(); ++i) {
        out << report.patient_ids[i] << ',' << format_double(report.pca_projection(i, 0)) << ','
            << format_double(report.pca_projection(i, 1)) << ',' << report.y1[i] << ','
            << report.y2[i] << '\n';
      }
    }
  }
}

}  // namespace longipred
