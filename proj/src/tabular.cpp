#include "longipred/tabular.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "longipred/errors.hpp"
#include "longipred/io_util.hpp"
#include "longipred/rng.hpp"

namespace longipred {

namespace {

constexpr const char* kBasePrefix = "base_";
constexpr const char* kFu1Prefix = "fu1_";

bool has_prefix(const std::string& s, const char* prefix) {
  return s.rfind(prefix, 0) == 0;
}

[[noreturn]] void cell_error(std::size_t row, const std::string& column, const std::string& what) {
  std::ostringstream os;
  os << "row " << row << ", column '" << column << "': " << what;
  throw ParseError(os.str());
}

}  // namespace

Matrix Cohort::baseline_matrix() const {
  Matrix X(size(), n_baseline());
  for (int i = 0; i < size(); ++i) X.row(i) = patients[i].baseline.transpose();
  return X;
}

Matrix Cohort::fu1_matrix() const {
  Matrix X = Matrix::Constant(size(), n_fu1(), std::numeric_limits<double>::quiet_NaN());
  for (int i = 0; i < size(); ++i) {
    if (patients[i].fu1) X.row(i) = patients[i].fu1->transpose();
  }
  return X;
}

Matrix Cohort::covariate_matrix(const std::vector<std::string>& names) const {
  Matrix X(size(), static_cast<int>(names.size()));
  for (std::size_t j = 0; j < names.size(); ++j) {
    const int col = covariate_index(names[j]);
    if (col < 0) throw ValidationError("unknown covariate column '" + names[j] + "'");
    for (int i = 0; i < size(); ++i) X(i, static_cast<int>(j)) = patients[i].covariates[col];
  }
  return X;
}

IntVector Cohort::y1() const {
  IntVector v(size());
  for (int i = 0; i < size(); ++i) v[i] = patients[i].y1;
  return v;
}

IntVector Cohort::y2() const {
  IntVector v(size());
  for (int i = 0; i < size(); ++i) v[i] = patients[i].y2;
  return v;
}

std::vector<int> Cohort::fu1_present_indices() const {
  std::vector<int> idx;
  for (int i = 0; i < size(); ++i) {
    if (patients[i].fu1) idx.push_back(i);
  }
  return idx;
}

int Cohort::covariate_index(const std::string& name) const {
  for (std::size_t j = 0; j < covariate_names.size(); ++j) {
    if (covariate_names[j] == name) return static_cast<int>(j);
  }
  return -1;
}

Cohort load_cohort(const std::filesystem::path& path, const ColumnSchema& schema) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open cohort file: " + path.string());

  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty cohort file: " + path.string());
  const std::vector<std::string> header = split_csv_line(line);

  // Classify header columns.
  int col_id = -1, col_y1 = -1, col_y2 = -1;
  std::vector<int> base_cols, fu1_cols, cov_cols;
  Cohort cohort;
  const std::set<std::string> schema_covs(schema.covariate_columns.begin(),
                                          schema.covariate_columns.end());
  for (int c = 0; c < static_cast<int>(header.size()); ++c) {
    const std::string& name = header[c];
    if (name == "patient_id") {
      col_id = c;
    } else if (name == "y1") {
      col_y1 = c;
    } else if (name == "y2") {
      col_y2 = c;
    } else if (has_prefix(name, kBasePrefix)) {
      base_cols.push_back(c);
      cohort.feature_names_baseline.push_back(name);
    } else if (has_prefix(name, kFu1Prefix)) {
      fu1_cols.push_back(c);
      cohort.feature_names_fu1.push_back(name);
    } else if (name == "months_fu1" || name == "months_fu2" || schema_covs.count(name)) {
      cov_cols.push_back(c);
      cohort.covariate_names.push_back(name);
    } else {
      throw ValidationError("unknown column '" + name + "' (not a label, base_/fu1_ feature, or configured covariate)");
    }
  }
  if (col_id < 0 || col_y1 < 0 || col_y2 < 0) {
    throw ValidationError("header must contain patient_id, y1 and y2 columns");
  }

  std::set<std::string> seen_ids;
  std::size_t row_no = 1;
  while (std::getline(in, line)) {
    ++row_no;
    if (line.empty() || (line.size() == 1 && line[0] == '\r')) continue;
    const std::vector<std::string> fields = split_csv_line(line);
    if (fields.size() != header.size()) {
      std::ostringstream os;
      os << "row " << row_no << ": expected " << header.size() << " fields, got " << fields.size();
      throw ParseError(os.str());
    }

    PatientRecord rec;
    rec.patient_id = fields[col_id];
    if (rec.patient_id.empty()) cell_error(row_no, "patient_id", "empty id");
    if (!seen_ids.insert(rec.patient_id).second) {
      throw ValidationError("duplicate patient_id '" + rec.patient_id + "' at row " + std::to_string(row_no));
    }

    auto parse_label = [&](int col, const char* name) {
      const std::string& cell = fields[col];
      const auto v = parse_double(cell);
      if (!v) cell_error(row_no, name, "not a number: '" + cell + "'");
      if (*v != 0.0 && *v != 1.0) {
        throw ValidationError("row " + std::to_string(row_no) + ", column '" + name +
                              "': label must be 0 or 1, got '" + cell + "'");
      }
      return static_cast<int>(*v);
    };
    rec.y1 = parse_label(col_y1, "y1");
    rec.y2 = parse_label(col_y2, "y2");

    auto parse_cell = [&](int col) {
      const std::string& cell = fields[col];
      if (cell.empty()) {
        throw ValidationError("row " + std::to_string(row_no) + ", column '" + header[col] +
                              "': empty cell (only fu1_ columns may be missing)");
      }
      const auto v = parse_double(cell);
      if (!v) cell_error(row_no, header[col], "not a number: '" + cell + "'");
      return *v;
    };

    rec.baseline.resize(static_cast<int>(base_cols.size()));
    for (std::size_t j = 0; j < base_cols.size(); ++j) rec.baseline[static_cast<int>(j)] = parse_cell(base_cols[j]);
    rec.covariates.resize(static_cast<int>(cov_cols.size()));
    for (std::size_t j = 0; j < cov_cols.size(); ++j) rec.covariates[static_cast<int>(j)] = parse_cell(cov_cols[j]);

    // fu1 features: fully present or fully absent.
    int n_empty = 0;
    for (int col : fu1_cols) n_empty += fields[col].empty() ? 1 : 0;
    if (n_empty == 0 && !fu1_cols.empty()) {
      Vector f(static_cast<int>(fu1_cols.size()));
      for (std::size_t j = 0; j < fu1_cols.size(); ++j) {
        const auto v = parse_double(fields[fu1_cols[j]]);
        if (!v) cell_error(row_no, header[fu1_cols[j]], "not a number: '" + fields[fu1_cols[j]] + "'");
        f[static_cast<int>(j)] = *v;
      }
      rec.fu1 = std::move(f);
    } else if (n_empty != static_cast<int>(fu1_cols.size())) {
      throw ValidationError("row " + std::to_string(row_no) +
                            ": fu1_ features must be all present or all absent");
    }

    cohort.patients.push_back(std::move(rec));
  }
  return cohort;
}

void write_cohort(const Cohort& cohort, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write cohort file: " + path.string());

  out << "patient_id,y1,y2";
  for (const auto& n : cohort.covariate_names) out << ',' << n;
  for (const auto& n : cohort.feature_names_baseline) out << ',' << n;
  for (const auto& n : cohort.feature_names_fu1) out << ',' << n;
  out << '\n';

  for (const auto& p : cohort.patients) {
    out << p.patient_id << ',' << p.y1 << ',' << p.y2;
    for (int j = 0; j < p.covariates.size(); ++j) out << ',' << format_double(p.covariates[j]);
    for (int j = 0; j < p.baseline.size(); ++j) out << ',' << format_double(p.baseline[j]);
    if (p.fu1) {
      for (int j = 0; j < p.fu1->size(); ++j) out << ',' << format_double((*p.fu1)[j]);
    } else {
      for (int j = 0; j < cohort.n_fu1(); ++j) out << ',';
    }
    out << '\n';
  }
}

SplitPlan make_splits(const Cohort& cohort, int n_splits, double test_fraction,
                      std::uint64_t seed, int min_occurrences, int max_retries) {
  if (n_splits < 1) throw ValidationError("n_splits must be >= 1");
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw ValidationError("test_fraction must be in (0, 1)");
  }

  // Joint (y1, y2) strata, keyed 2*y1 + y2.
  std::array<std::vector<int>, 4> strata;
  for (int i = 0; i < cohort.size(); ++i) {
    strata[2 * cohort.patients[i].y1 + cohort.patients[i].y2].push_back(i);
  }
  for (int s = 0; s < 4; ++s) {
    if (strata[s].size() == 1) {
      std::ostringstream os;
      os << "stratum (y1=" << s / 2 << ", y2=" << s % 2 << ") has a single patient; need >= 2";
      throw ValidationError(os.str());
    }
  }

  for (int attempt = 0; attempt < max_retries; ++attempt) {
    const std::uint64_t attempt_seed = derive_seed(seed, static_cast<std::uint64_t>(attempt));
    SplitPlan plan;
    plan.test_fraction = test_fraction;
    plan.seed = seed;
    plan.min_occurrences = min_occurrences;
    plan.splits.reserve(n_splits);

    std::vector<int> test_counts(cohort.size(), 0);
    for (int s = 0; s < n_splits; ++s) {
      Rng rng(derive_seed(attempt_seed, static_cast<std::uint64_t>(s)));
      Split split;
      for (const auto& members : strata) {
        if (members.empty()) continue;
        std::vector<int> order = members;
        rng.shuffle(order);
        const int n_test = static_cast<int>(std::llround(test_fraction * static_cast<double>(order.size())));
        for (std::size_t i = 0; i < order.size(); ++i) {
          (static_cast<int>(i) < n_test ? split.test : split.train).push_back(order[i]);
        }
      }
      if (split.train.empty() || split.test.empty()) {
        throw ValidationError("test_fraction leaves an empty train or test fold");
      }
      std::sort(split.train.begin(), split.train.end());
      std::sort(split.test.begin(), split.test.end());
      for (int i : split.test) ++test_counts[i];
      plan.splits.push_back(std::move(split));
    }

    const bool ok = std::all_of(test_counts.begin(), test_counts.end(),
                                [&](int c) { return c >= min_occurrences; });
    if (ok) return plan;
  }
  std::ostringstream os;
  os << "could not satisfy min_occurrences=" << min_occurrences << " within " << max_retries
     << " plan redraws; increase n_splits or lower min_occurrences";
  throw ValidationError(os.str());
}

Normalizer fit_normalizer(const Matrix& X, const std::vector<int>& rows) {
  if (rows.empty()) throw ValidationError("fit_normalizer: empty row set");
  Normalizer norm;
  norm.mins = Vector::Constant(X.cols(), std::numeric_limits<double>::infinity());
  norm.maxs = Vector::Constant(X.cols(), -std::numeric_limits<double>::infinity());
  for (int i : rows) {
    norm.mins = norm.mins.cwiseMin(X.row(i).transpose());
    norm.maxs = norm.maxs.cwiseMax(X.row(i).transpose());
  }
  return norm;
}

Matrix apply_normalizer(const Normalizer& norm, const Matrix& X) {
  if (X.cols() != norm.mins.size()) {
    throw ValidationError("apply_normalizer: column count mismatch");
  }
  Matrix out(X.rows(), X.cols());
  for (int j = 0; j < X.cols(); ++j) {
    const double range = norm.maxs[j] - norm.mins[j];
    if (range == 0.0) {
      out.col(j).setZero();
    } else {
      out.col(j) = ((X.col(j).array() - norm.mins[j]) / range).cwiseMax(0.0).cwiseMin(1.0);
    }
  }
  return out;
}

}  // namespace longipred
