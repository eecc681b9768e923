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

// Command-line front end: resample, categorize, benchmark, sweep, compare.
//
// Exit codes: 0 success, 2 input error, 3 invalid or infeasible
// configuration, 4 benchmark or sweep finished with failed cells.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "csmoute/csmoute.hpp"
#include "csmoute/experiment/benchmark.hpp"
#include "csmoute/experiment/config.hpp"
#include "csmoute/experiment/reports.hpp"
#include "csmoute/experiment/sweep.hpp"

namespace fs = std::filesystem;
using namespace csmoute;
using namespace csmoute::experiment;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_input = 2;
constexpr int exit_config = 3;
constexpr int exit_partial = 4;

CategoryOrder parse_order(const std::string& s) {
  if (s == "first_appearance") return CategoryOrder::first_appearance;
  if (s == "lexicographic") return CategoryOrder::lexicographic;
  throw ArgumentError("--category-order must be first_appearance or lexicographic");
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    write_text_file(path, text);
  }
}

// resample -----------------------------------------------------------------

struct ResampleArgs {
  std::string input;
  std::string output;
  std::string lineage;
  std::string method = "csmoute";
  double ratio = 0.5;
  long long k_smote = 5;
  long long k_smute = 5;
  std::uint64_t seed = 0;
  bool standardize = false;
  bool originals_only = false;
  std::string class_column = "Class";
  std::string minority_label;
  std::string category_order = "first_appearance";
};

nlohmann::json lineage_json(const std::vector<Synthetic>& lineage) {
  auto arr = nlohmann::json::array();
  for (const auto& s : lineage) {
    arr.push_back({{"id", s.id}, {"parent_a", s.parent_a}, {"parent_b", s.parent_b}, {"r", s.r}});
  }
  return arr;
}

int cmd_resample(const ResampleArgs& a) {
  const auto method = parse_method(a.method);
  if (!method) throw ArgumentError("unknown method '" + a.method + "'");
  LabeledDataset ds = load_dataset(a.input, {a.class_column, a.minority_label});
  ds = encode_categoricals(std::move(ds), parse_order(a.category_order));
  if (a.standardize) ds = standardize(ds).dataset;

  const auto maj_rows = ds.rows_of(ClassLabel::majority);
  const auto min_rows = ds.rows_of(ClassLabel::minority);
  const Matrix maj = ds.features.select_rows(maj_rows);
  const Matrix min = ds.features.select_rows(min_rows);
  const auto gap = static_cast<long long>(maj.rows() - min.rows());

  nlohmann::json lineage;
  lineage["method"] = a.method;
  lineage["seed"] = a.seed;
  lineage["majority"]["input_rows"] = maj_rows;
  lineage["minority"]["input_rows"] = min_rows;
  Matrix maj_out;
  Matrix min_out;
  switch (*method) {
    case Method::none:
      maj_out = maj;
      min_out = min;
      break;
    case Method::rus: {
      Rng rng = Rng::derive(a.seed, "rus");
      const auto keep = rus_keep(maj.rows(), gap, rng);
      maj_out = maj.select_rows(keep);
      min_out = min;
      std::vector<std::size_t> removed;
      for (std::size_t i = 0, j = 0; i < maj.rows(); ++i) {
        if (j < keep.size() && keep[j] == i) ++j;
        else removed.push_back(i);
      }
      lineage["majority"]["output_ids"] = keep;
      lineage["majority"]["removed"] = removed;
      break;
    }
    case Method::ros: {
      Rng rng = Rng::derive(a.seed, "ros");
      const auto sources = ros_sources(min.rows(), gap, rng);
      maj_out = maj;
      min_out = min;
      auto dup = nlohmann::json::array();
      for (std::size_t j = 0; j < sources.size(); ++j) {
        min_out.append_row(min.row(sources[j]));
        dup.push_back({{"id", min.rows() + j}, {"source", sources[j]}});
      }
      lineage["minority"]["duplicates"] = dup;
      break;
    }
    case Method::smote:
    case Method::smute:
    case Method::csmoute: {
      ResampleConfig cfg;
      cfg.k_smote = a.k_smote;
      cfg.k_smute = a.k_smute;
      cfg.ratio = *method == Method::smote ? 1.0 : *method == Method::smute ? 0.0 : a.ratio;
      cfg.seed = a.seed;
      cfg.smute_originals_only = a.originals_only;
      auto res = csmoute::csmoute(maj, min, cfg);
      lineage["ratio"] = cfg.ratio;
      lineage["k_smote"] = cfg.k_smote;
      lineage["k_smute"] = cfg.k_smute;
      lineage["n_smote"] = res.n_smote;
      lineage["n_smute"] = res.n_smute;
      lineage["minority"]["synthetic"] = lineage_json(res.minority_lineage);
      lineage["majority"]["synthetic"] = lineage_json(res.majority_lineage);
      lineage["majority"]["removed"] = res.removed;
      lineage["majority"]["output_ids"] = res.majority_ids;
      maj_out = std::move(res.majority_out);
      min_out = std::move(res.minority_out);
      break;
    }
  }

  LabeledDataset out;
  out.name = ds.name;
  out.columns = ds.columns;
  out.class_column = ds.class_column;
  out.minority_name = ds.minority_name;
  out.majority_name = ds.majority_name;
  out.features = maj_out;
  out.features.append_rows(min_out);
  out.labels.assign(maj_out.rows(), ClassLabel::majority);
  out.labels.resize(out.features.rows(), ClassLabel::minority);

  emit(to_csv(out), a.output);
  std::string lineage_path = a.lineage;
  if (lineage_path.empty() && !a.output.empty() && a.output != "-") lineage_path = a.output + ".lineage.json";
  if (!lineage_path.empty()) write_text_file(lineage_path, lineage.dump(1) + "\n");
  return exit_ok;
}

// categorize ---------------------------------------------------------------

struct CategorizeArgs {
  std::vector<std::string> inputs;
  std::string output;
  std::string class_column = "Class";
  std::string category_order = "first_appearance";
};

int cmd_categorize(const CategorizeArgs& a) {
  std::ostringstream out;
  out << taxonomy_csv_header() << '\n';
  for (const auto& path : a.inputs) {
    const LabeledDataset raw = load_dataset(path, {a.class_column, {}});
    const LabeledDataset ds = prepare(raw, stderr_warnings(), parse_order(a.category_order));
    out << taxonomy_csv_row(ds.name, summarize(ds), categorize(ds)) << '\n';
  }
  emit(out.str(), a.output);
  return exit_ok;
}

// benchmark ----------------------------------------------------------------

struct BenchmarkArgs {
  std::string config;
  std::string output;
  std::optional<long long> threads;
  bool quiet = false;
};

int cmd_benchmark(const BenchmarkArgs& a) {
  const fs::path config_path(a.config);
  ExperimentConfig cfg = parse_config(read_file(config_path), config_path.parent_path());
  if (!a.output.empty()) cfg.output_dir = a.output;
  const std::size_t threads = resolve_threads(a.threads);
  std::function<void(std::string_view)> progress;
  if (!a.quiet) progress = [](std::string_view msg) { std::cerr << std::string(msg) + "\n"; };
  const auto result = run_benchmark(cfg, threads, progress);
  write_benchmark(result, cfg);
  for (const auto& f : result.failures) {
    std::cerr << "error: cell " << f.dataset << '/' << to_string(f.method) << '/' << to_string(f.classifier)
              << " failed: " << f.message << '\n';
  }
  return result.failures.empty() ? exit_ok : exit_partial;
}

// sweep --------------------------------------------------------------------

struct SweepArgs {
  std::vector<std::string> inputs;
  std::string output;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> classifiers{"lr"};
  std::vector<std::string> metrics{"f_measure", "auc", "g_mean"};
  std::vector<double> ratios{0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  long long k_smote = 5;
  long long k_smute = 5;
  std::optional<long long> threads;
  bool fold_safe_scaling = false;
  bool originals_only = false;
  double threshold = 0.5;
  long long knn_k = 5;
  std::string class_column = "Class";
  std::string category_order = "first_appearance";
};

int cmd_sweep(const SweepArgs& a) {
  if (!a.seed) throw ArgumentError("--seed is required");
  ExperimentConfig load_cfg;
  load_cfg.class_column = a.class_column;
  load_cfg.category_order = parse_order(a.category_order);
  std::vector<DatasetEntry> datasets;
  for (const auto& p : a.inputs) datasets.push_back(load_entry(p, load_cfg, stderr_warnings()));

  SweepOptions o;
  o.ratios = a.ratios;
  o.classifiers.clear();
  for (const auto& c : a.classifiers) {
    const auto k = parse_classifier(c);
    if (!k) throw ArgumentError("unknown classifier '" + c + "'");
    o.classifiers.push_back(*k);
  }
  o.metrics.clear();
  for (const auto& m : a.metrics) {
    const auto k = parse_metric(m);
    if (!k) throw ArgumentError("unknown metric '" + m + "'");
    o.metrics.push_back(*k);
  }
  o.k_smote = a.k_smote;
  o.k_smute = a.k_smute;
  o.seed = *a.seed;
  o.fold_safe_scaling = a.fold_safe_scaling;
  o.smute_originals_only = a.originals_only;
  o.threshold = a.threshold;
  o.knn_k = a.knn_k;
  if (o.k_smote < 1 || o.k_smute < 1 || o.knn_k < 1) throw ArgumentError("k values must be at least 1");

  const auto result = run_sweep(datasets, o, resolve_threads(a.threads));
  std::ostringstream out;
  write_sweep_csv(result, out);
  emit(out.str(), a.output);
  for (const auto& f : result.failures) {
    std::cerr << "error: " << f.dataset << '/' << to_string(f.classifier) << " failed: " << f.message << '\n';
  }
  return result.failures.empty() ? exit_ok : exit_partial;
}

// compare ------------------------------------------------------------------

struct CompareArgs {
  std::string averages;
  std::string taxonomy;
  std::string output = ".";
  std::string control = "csmoute";
  std::vector<std::string> wilcoxon{"smute:rus"};
  double alpha = 0.05;
};

int cmd_compare(const CompareArgs& a) {
  const auto entries = parse_averages_csv(read_file(a.averages));
  ReportOptions o;
  o.control = a.control;
  o.alpha = a.alpha;
  if (!(o.alpha > 0.0 && o.alpha < 1.0)) throw ArgumentError("--alpha must lie in (0, 1)");
  o.wilcoxon_pairs.clear();
  for (const auto& p : a.wilcoxon) {
    const auto colon = p.find(':');
    if (colon == std::string::npos) throw ArgumentError("--wilcoxon pairs are written a:b, got '" + p + "'");
    o.wilcoxon_pairs.emplace_back(p.substr(0, colon), p.substr(colon + 1));
  }
  std::optional<std::map<std::string, TypeShares>> shares;
  if (!a.taxonomy.empty()) shares = parse_taxonomy_csv(read_file(a.taxonomy));
  write_reports(compute_reports(entries, o, shares ? &*shares : nullptr), a.output);
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Interpolation-based resampling for imbalanced binary data"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(experiment::version));

  ResampleArgs ra;
  auto* rs = app.add_subcommand("resample", "Resample one dataset and write CSV plus lineage JSON");
  rs->add_option("input", ra.input, "KEEL .dat or CSV file")->required();
  rs->add_option("-o,--output", ra.output, "Output CSV (default: standard output)");
  rs->add_option("--lineage", ra.lineage, "Lineage JSON (default: <output>.lineage.json)");
  rs->add_option("--method", ra.method, "none, rus, ros, smote, smute or csmoute")->capture_default_str();
  rs->add_option("--ratio", ra.ratio, "Share of the class gap closed by oversampling")->capture_default_str();
  rs->add_option("--k-smote", ra.k_smote)->capture_default_str();
  rs->add_option("--k-smute", ra.k_smute)->capture_default_str();
  rs->add_option("--seed", ra.seed)->required();
  rs->add_flag("--standardize", ra.standardize, "Standardize features before resampling");
  rs->add_flag("--smute-originals-only", ra.originals_only, "Keep merged points out of SMUTE neighbor candidacy");
  rs->add_option("--class-column", ra.class_column, "CSV class column")->capture_default_str();
  rs->add_option("--minority-label", ra.minority_label, "CSV minority class label");
  rs->add_option("--category-order", ra.category_order)->capture_default_str();

  CategorizeArgs ca;
  auto* cs = app.add_subcommand("categorize", "Minority-type proportions per dataset");
  cs->add_option("inputs", ca.inputs, "KEEL .dat or CSV files")->required();
  cs->add_option("-o,--output", ca.output, "Output CSV (default: standard output)");
  cs->add_option("--class-column", ca.class_column)->capture_default_str();
  cs->add_option("--category-order", ca.category_order)->capture_default_str();

  BenchmarkArgs ba;
  auto* bs = app.add_subcommand("benchmark", "Parameter search and 5x2 cross-validation over a configuration");
  bs->add_option("-c,--config", ba.config, "INI configuration")->required();
  bs->add_option("-o,--output", ba.output, "Output directory (overrides the configuration)");
  bs->add_option("-j,--threads", ba.threads, "Worker count (default: RESAMPLE_BENCH_THREADS or all cores)");
  bs->add_flag("-q,--quiet", ba.quiet, "No per-cell progress on standard error");

  SweepArgs sa;
  auto* ss = app.add_subcommand("sweep", "CSMOUTE performance across ratio values");
  ss->add_option("inputs", sa.inputs, "KEEL .dat or CSV files")->required();
  ss->add_option("-o,--output", sa.output, "Output CSV (default: standard output)");
  ss->add_option("--seed", sa.seed)->required();
  ss->add_option("--classifier", sa.classifiers, "lr and/or knn")->capture_default_str();
  ss->add_option("--metric", sa.metrics)->capture_default_str();
  ss->add_option("--ratios", sa.ratios)->delimiter(',')->capture_default_str();
  ss->add_option("--k-smote", sa.k_smote)->capture_default_str();
  ss->add_option("--k-smute", sa.k_smute)->capture_default_str();
  ss->add_option("-j,--threads", sa.threads);
  ss->add_flag("--fold-safe-scaling", sa.fold_safe_scaling, "Fit the scaler on each training half");
  ss->add_flag("--smute-originals-only", sa.originals_only);
  ss->add_option("--threshold", sa.threshold)->capture_default_str();
  ss->add_option("--knn-k", sa.knn_k)->capture_default_str();
  ss->add_option("--class-column", sa.class_column)->capture_default_str();
  ss->add_option("--category-order", sa.category_order)->capture_default_str();

  CompareArgs pa;
  auto* ps = app.add_subcommand("compare", "Statistical comparison of an averages CSV");
  ps->add_option("averages", pa.averages, "averages.csv from a benchmark run")->required();
  ps->add_option("--taxonomy", pa.taxonomy, "categorize CSV for the correlation report");
  ps->add_option("-o,--output", pa.output, "Output directory")->capture_default_str();
  ps->add_option("--control", pa.control)->capture_default_str();
  ps->add_option("--wilcoxon", pa.wilcoxon, "Method pairs a:b")->capture_default_str();
  ps->add_option("--alpha", pa.alpha)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_config;
  }

  try {
    if (*rs) return cmd_resample(ra);
    if (*cs) return cmd_categorize(ca);
    if (*bs) return cmd_benchmark(ba);
    if (*ss) return cmd_sweep(sa);
    if (*ps) return cmd_compare(pa);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_input;
  } catch (const ConfigurationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_config;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return exit_ok;
}
