/*
 * Copyright 2026 The csmoute Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef CSMOUTE_EXPERIMENT_BENCHMARK_HPP
#define CSMOUTE_EXPERIMENT_BENCHMARK_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "csmoute/dataset.hpp"
#include "csmoute/detail/text.hpp"
#include "csmoute/evaluation.hpp"
#include "csmoute/experiment/config.hpp"
#include "csmoute/experiment/parallel.hpp"
#include "csmoute/experiment/reports.hpp"
#include "csmoute/io.hpp"
#include "csmoute/preprocess.hpp"
#include "csmoute/rng.hpp"
#include "csmoute/taxonomy.hpp"

/**
 * @file benchmark.hpp
 *
 * @brief The full comparison protocol. For every (dataset, method,
 * classifier) cell, a seeded stratified 2-fold search picks the grid
 * setting that maximizes each metric, then 5x2 cross-validation scores the
 * chosen setting. Cells run on a worker pool; every random draw is keyed by
 * (seed, dataset, fold), so the outputs do not depend on the pool width.
 */

namespace csmoute::experiment {

inline constexpr std::string_view version = "0.1.0";

struct DatasetEntry {
  std::string name;
  std::string file;
  LabeledDataset data;  // categoricals encoded, unscaled
  DatasetSummary summary;
  std::optional<MinorityTypeReport> taxonomy;
  std::uint64_t content_hash = 0;
};

struct FoldRecord {
  std::string dataset;
  Method method = Method::none;
  ClassifierKind classifier = ClassifierKind::logistic;
  Metric metric = Metric::f_measure;
  std::size_t repetition = 0;
  std::size_t fold = 0;
  std::optional<double> value;
  std::string params;
};

struct AverageRecord {
  std::string dataset;
  Method method = Method::none;
  ClassifierKind classifier = ClassifierKind::logistic;
  Metric metric = Metric::f_measure;
  std::optional<double> value;
  std::string params;
};

struct CellFailure {
  std::string dataset;
  Method method = Method::none;
  ClassifierKind classifier = ClassifierKind::logistic;
  std::string message;
};

struct BenchmarkResult {
  std::vector<DatasetEntry> datasets;
  std::vector<FoldRecord> folds;
  std::vector<AverageRecord> averages;
  std::vector<CellFailure> failures;
  std::size_t cells = 0;
};

/// Seed of the outer 5x2 plan and resampling draws for one dataset.
inline std::uint64_t outer_seed(std::uint64_t seed, std::string_view dataset) { return derive_seed(seed, dataset); }

/// Seed of the parameter search for one dataset.
inline std::uint64_t inner_seed(std::uint64_t seed, std::string_view dataset) {
  return derive_seed(derive_seed(seed, dataset), "inner");
}

/// Loads, encodes and types one dataset.
inline DatasetEntry load_entry(const std::filesystem::path& path, const ExperimentConfig& cfg,
                               const WarningSink& warn = ignore_warnings()) {
  DatasetEntry e;
  const std::string text = read_file(path);
  e.name = path.stem().string();
  e.file = path.filename().string();
  e.content_hash = fnv1a64(text);
  const bool keel = csmoute::detail::iequals(path.extension().string(), ".dat");
  LabeledDataset raw = keel ? parse_keel(text, e.name, warn) : parse_csv(text, cfg.class_column, {}, e.name, warn);
  e.data = encode_categoricals(std::move(raw), cfg.category_order);
  e.summary = summarize(e.data);
  if (e.data.rows() >= 6) e.taxonomy = categorize(standardize(e.data, ignore_warnings()).dataset);
  return e;
}

struct CellOutput {
  std::vector<FoldRecord> folds;
  std::vector<AverageRecord> averages;
  std::optional<CellFailure> failure;
};

/// Index of the best candidate per metric; a candidate whose search failed
/// or produced no value scores -inf, and ties keep the earlier candidate.
inline std::vector<std::size_t> select_parameters(const DatasetEntry& d, const std::vector<ResamplerSpec>& cands,
                                                  const ClassifierSpec& clf, const ExperimentConfig& cfg,
                                                  const EvaluationOptions& opt) {
  std::vector<std::size_t> chosen(cfg.metrics.size(), 0);
  if (cands.size() <= 1) return chosen;
  const std::uint64_t seed = inner_seed(cfg.seed, d.name);
  const FoldPlan plan = make_fold_plan(d.data, seed, 1);
  constexpr double worst = -std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> score(cands.size(), std::vector<double>(cfg.metrics.size(), worst));
  bool any = false;
  std::string last_error;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    try {
      const auto res = evaluate_plan(d.data, plan, cands[i], clf, seed, opt);
      for (std::size_t m = 0; m < cfg.metrics.size(); ++m) score[i][m] = res.average(cfg.metrics[m]).value_or(worst);
      any = true;
    } catch (const ConfigurationError& e) {
      last_error = e.what();
    }
  }
  if (!any) throw ConfigurationError("parameter search: no feasible setting (" + last_error + ")");
  for (std::size_t m = 0; m < cfg.metrics.size(); ++m) {
    for (std::size_t i = 1; i < cands.size(); ++i) {
      if (score[i][m] > score[chosen[m]][m]) chosen[m] = i;
    }
  }
  return chosen;
}

inline CellOutput run_cell(const DatasetEntry& d, Method method, ClassifierKind kind, const ExperimentConfig& cfg) {
  CellOutput out;
  ClassifierSpec clf;
  clf.kind = kind;
  clf.k = cfg.knn_k;
  EvaluationOptions opt;
  opt.fold_safe_scaling = cfg.fold_safe_scaling;
  opt.threshold = cfg.threshold;
  try {
    const auto cands = candidates(method, cfg);
    const auto chosen = select_parameters(d, cands, clf, cfg, opt);
    const std::uint64_t seed = outer_seed(cfg.seed, d.name);
    const FoldPlan plan = make_fold_plan(d.data, seed);
    std::map<std::size_t, EvaluationResult> cache;
    for (std::size_t m = 0; m < cfg.metrics.size(); ++m) {
      const std::size_t c = chosen[m];
      if (!cache.count(c)) cache.emplace(c, evaluate_plan(d.data, plan, cands[c], clf, seed, opt));
      const auto& res = cache.at(c);
      const Metric metric = cfg.metrics[m];
      const std::string params = describe(cands[c]);
      for (const auto& f : res.folds) {
        out.folds.push_back({d.name, method, kind, metric, f.repetition, f.fold, f.report.value(metric), params});
      }
      out.averages.push_back({d.name, method, kind, metric, res.average(metric), params});
    }
  } catch (const Error& e) {
    out.folds.clear();
    out.averages.clear();
    out.failure = CellFailure{d.name, method, kind, e.what()};
  }
  return out;
}

/// Runs every cell. `progress`, when set, is called once per finished cell
/// from the worker that ran it.
inline BenchmarkResult run_benchmark(const ExperimentConfig& cfg, std::size_t threads,
                                     const std::function<void(std::string_view)>& progress = {}) {
  BenchmarkResult result;
  for (const auto& path : cfg.datasets) result.datasets.push_back(load_entry(path, cfg));
  {
    std::map<std::string, std::size_t> seen;
    for (const auto& d : result.datasets) {
      if (seen[d.name]++) throw ArgumentError("benchmark: dataset name '" + d.name + "' appears twice");
    }
  }

  struct Cell {
    std::size_t dataset;
    Method method;
    ClassifierKind classifier;
  };
  std::vector<Cell> cells;
  for (std::size_t d = 0; d < result.datasets.size(); ++d) {
    for (auto m : cfg.methods) {
      for (auto c : cfg.classifiers) cells.push_back({d, m, c});
    }
  }
  result.cells = cells.size();
  std::vector<CellOutput> outputs(cells.size());
  parallel_for(cells.size(), threads, [&](std::size_t i) {
    const auto& cell = cells[i];
    outputs[i] = run_cell(result.datasets[cell.dataset], cell.method, cell.classifier, cfg);
    if (progress) {
      progress(result.datasets[cell.dataset].name + " " + std::string(to_string(cell.method)) + " " +
               std::string(to_string(cell.classifier)) + (outputs[i].failure ? " FAILED" : " done"));
    }
  });
  for (auto& o : outputs) {
    result.folds.insert(result.folds.end(), o.folds.begin(), o.folds.end());
    result.averages.insert(result.averages.end(), o.averages.begin(), o.averages.end());
    if (o.failure) result.failures.push_back(std::move(*o.failure));
  }
  return result;
}

inline std::vector<ResultEntry> to_entries(const std::vector<AverageRecord>& averages) {
  std::vector<ResultEntry> out;
  out.reserve(averages.size());
  for (const auto& a : averages) {
    out.push_back({a.dataset, std::string(to_string(a.method)), std::string(to_string(a.classifier)),
                   std::string(to_string(a.metric)), a.value});
  }
  return out;
}

inline std::map<std::string, TypeShares> taxonomy_shares(const std::vector<DatasetEntry>& datasets) {
  std::map<std::string, TypeShares> out;
  for (const auto& d : datasets) {
    if (!d.taxonomy) continue;
    TypeShares s{};
    for (std::size_t t = 0; t < 4; ++t) s[t] = 100.0 * d.taxonomy->proportions[t];
    out[d.name] = s;
  }
  return out;
}

inline ReportOptions report_options(const ExperimentConfig& cfg) {
  ReportOptions r;
  r.control = std::string(to_string(cfg.control));
  r.alpha = cfg.alpha;
  r.wilcoxon_pairs.clear();
  for (const auto& [a, b] : cfg.wilcoxon_pairs) {
    r.wilcoxon_pairs.emplace_back(std::string(to_string(a)), std::string(to_string(b)));
  }
  return r;
}

inline std::string taxonomy_csv_header() {
  return "name,ir,samples,features,safe_pct,borderline_pct,rare_pct,outlier_pct";
}

/// One Table I-shaped row; every real printed with 2 decimals.
inline std::string taxonomy_csv_row(std::string_view name, const DatasetSummary& s, const MinorityTypeReport& r) {
  using csmoute::detail::format_fixed;
  std::string row = csmoute::detail::quote_csv(name) + "," + format_fixed(s.imbalance_ratio, 2) + "," +
                    std::to_string(s.n_samples) + "," + std::to_string(s.n_features);
  for (double p : r.proportions) row += "," + format_fixed(100.0 * p, 2);
  return row;
}

inline std::string hex64(std::uint64_t v) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i, v >>= 4) s[static_cast<std::size_t>(i)] = digits[v & 0xf];
  return s;
}

namespace detail {

inline nlohmann::json opt_json(const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(); }

}  // namespace detail

/// Writes folds.csv/json, averages.csv/json, taxonomy.csv, failures.csv, the
/// comparison reports and manifest.json into cfg.output_dir.
inline void write_benchmark(const BenchmarkResult& r, const ExperimentConfig& cfg) {
  using csmoute::detail::quote_csv;
  const auto& dir = cfg.output_dir;
  std::filesystem::create_directories(dir);

  std::ostringstream fcsv;
  nlohmann::json fjson = nlohmann::json::array();
  fcsv << "dataset,method,classifier,metric,repetition,fold,value,params\n";
  for (const auto& f : r.folds) {
    fcsv << quote_csv(f.dataset) << ',' << to_string(f.method) << ',' << to_string(f.classifier) << ','
         << to_string(f.metric) << ',' << f.repetition << ',' << f.fold << ',' << detail::opt(f.value) << ','
         << quote_csv(f.params) << '\n';
    fjson.push_back({{"dataset", f.dataset},
                     {"method", to_string(f.method)},
                     {"classifier", to_string(f.classifier)},
                     {"metric", to_string(f.metric)},
                     {"repetition", f.repetition},
                     {"fold", f.fold},
                     {"value", detail::opt_json(f.value)},
                     {"params", f.params}});
  }
  write_text_file(dir / "folds.csv", fcsv.str());
  write_text_file(dir / "folds.json", fjson.dump(1) + "\n");

  std::ostringstream acsv;
  nlohmann::json ajson = nlohmann::json::array();
  acsv << "dataset,method,classifier,metric,value,params\n";
  for (const auto& a : r.averages) {
    acsv << quote_csv(a.dataset) << ',' << to_string(a.method) << ',' << to_string(a.classifier) << ','
         << to_string(a.metric) << ',' << detail::opt(a.value) << ',' << quote_csv(a.params) << '\n';
    ajson.push_back({{"dataset", a.dataset},
                     {"method", to_string(a.method)},
                     {"classifier", to_string(a.classifier)},
                     {"metric", to_string(a.metric)},
                     {"value", detail::opt_json(a.value)},
                     {"params", a.params}});
  }
  write_text_file(dir / "averages.csv", acsv.str());
  write_text_file(dir / "averages.json", ajson.dump(1) + "\n");

  std::ostringstream tcsv;
  tcsv << taxonomy_csv_header() << '\n';
  for (const auto& d : r.datasets) {
    if (d.taxonomy) tcsv << taxonomy_csv_row(d.name, d.summary, *d.taxonomy) << '\n';
  }
  write_text_file(dir / "taxonomy.csv", tcsv.str());

  std::ostringstream xcsv;
  xcsv << "dataset,method,classifier,message\n";
  for (const auto& f : r.failures) {
    xcsv << quote_csv(f.dataset) << ',' << to_string(f.method) << ',' << to_string(f.classifier) << ','
         << quote_csv(f.message) << '\n';
  }
  write_text_file(dir / "failures.csv", xcsv.str());

  const auto shares = taxonomy_shares(r.datasets);
  write_reports(compute_reports(to_entries(r.averages), report_options(cfg), &shares), dir);

  nlohmann::json manifest;
  manifest["version"] = version;
  manifest["seed"] = cfg.seed;
  manifest["config_hash"] = hex64(fnv1a64(canonical_config(cfg)));
  manifest["posthoc"] = "holm step-down against control";
  manifest["control"] = to_string(cfg.control);
  manifest["cells"] = r.cells;
  manifest["failed_cells"] = r.failures.size();
  nlohmann::json ds = nlohmann::json::array();
  for (const auto& d : r.datasets) {
    ds.push_back({{"name", d.name}, {"file", d.file}, {"fnv1a64", hex64(d.content_hash)}});
  }
  manifest["datasets"] = ds;
  write_text_file(dir / "manifest.json", manifest.dump(2) + "\n");
}

}  // namespace csmoute::experiment

#endif  // CSMOUTE_EXPERIMENT_BENCHMARK_HPP
