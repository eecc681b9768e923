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

#ifndef CSMOUTE_EXPERIMENT_CONFIG_HPP
#define CSMOUTE_EXPERIMENT_CONFIG_HPP

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "csmoute/classifiers.hpp"
#include "csmoute/detail/text.hpp"
#include "csmoute/error.hpp"
#include "csmoute/evaluation.hpp"
#include "csmoute/metrics.hpp"
#include "csmoute/preprocess.hpp"
#include "csmoute/rng.hpp"

/**
 * @file config.hpp
 *
 * @brief Benchmark configuration: an INI file with the sections
 * [experiment], [grid], [options] and [report]. See docs/config.md.
 */

namespace csmoute::experiment {

struct ParameterGrid {
  std::vector<long long> smote_k{1, 3, 5, 7};
  std::vector<long long> smute_k{1, 3, 5};
  std::vector<long long> csmoute_k_smote{1, 3, 5, 7};
  std::vector<long long> csmoute_k_smute{1, 3, 5};
  std::vector<double> csmoute_ratio{0.0, 0.2, 0.4, 0.6, 0.8, 1.0};
};

struct ExperimentConfig {
  std::vector<std::filesystem::path> datasets;  // in benchmark order
  std::filesystem::path output_dir = "results";
  std::uint64_t seed = 0;
  std::vector<Method> methods{all_methods.begin(), all_methods.end()};
  std::vector<ClassifierKind> classifiers{ClassifierKind::logistic, ClassifierKind::knn};
  std::vector<Metric> metrics{all_metrics.begin(), all_metrics.end()};
  ParameterGrid grid;

  bool fold_safe_scaling = false;
  bool smute_originals_only = false;
  double threshold = 0.5;
  long long knn_k = 5;
  CategoryOrder category_order = CategoryOrder::first_appearance;
  std::string class_column = "Class";

  Method control = Method::csmoute;
  std::vector<std::pair<Method, Method>> wilcoxon_pairs{{Method::smute, Method::rus}};
  double alpha = 0.05;
};

/// Candidate resampler settings searched for `method`, in grid order.
inline std::vector<ResamplerSpec> candidates(Method method, const ExperimentConfig& cfg) {
  std::vector<ResamplerSpec> out;
  ResamplerSpec base;
  base.method = method;
  base.smute_originals_only = cfg.smute_originals_only;
  switch (method) {
    case Method::none:
    case Method::rus:
    case Method::ros:
      out.push_back(base);
      break;
    case Method::smote:
      for (auto k : cfg.grid.smote_k) {
        base.k_smote = k;
        out.push_back(base);
      }
      break;
    case Method::smute:
      for (auto k : cfg.grid.smute_k) {
        base.k_smute = k;
        out.push_back(base);
      }
      break;
    case Method::csmoute:
      for (auto ks : cfg.grid.csmoute_k_smote) {
        for (auto ku : cfg.grid.csmoute_k_smute) {
          for (auto r : cfg.grid.csmoute_ratio) {
            base.k_smote = ks;
            base.k_smute = ku;
            base.ratio = r;
            out.push_back(base);
          }
        }
      }
      break;
  }
  return out;
}

/// The tunable parameters of `spec`, e.g. "k_smote=5;k_smute=3;ratio=0.4".
inline std::string describe(const ResamplerSpec& spec) {
  switch (spec.method) {
    case Method::smote: return "k_smote=" + std::to_string(spec.k_smote);
    case Method::smute: return "k_smute=" + std::to_string(spec.k_smute);
    case Method::csmoute:
      return "k_smote=" + std::to_string(spec.k_smote) + ";k_smute=" + std::to_string(spec.k_smute) +
             ";ratio=" + detail::format_double(spec.ratio);
    default: return "";
  }
}

namespace detail {

using csmoute::detail::format_double;
using csmoute::detail::split_trimmed;
using csmoute::detail::trim;

inline std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  for (auto part : split_trimmed(s, ',')) {
    if (!part.empty()) out.emplace_back(part);
  }
  return out;
}

inline long long parse_int(std::string_view key, std::string_view v) {
  const auto d = csmoute::detail::parse_double(v);
  if (!d || *d != static_cast<double>(static_cast<long long>(*d))) {
    throw ArgumentError("config: '" + std::string(key) + "' expects integers, got '" + std::string(v) + "'");
  }
  return static_cast<long long>(*d);
}

inline double parse_real(std::string_view key, std::string_view v) {
  const auto d = csmoute::detail::parse_double(v);
  if (!d) throw ArgumentError("config: '" + std::string(key) + "' expects a number, got '" + std::string(v) + "'");
  return *d;
}

inline bool parse_bool(std::string_view key, std::string_view v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ArgumentError("config: '" + std::string(key) + "' expects true or false, got '" + std::string(v) + "'");
}

template <class T, class F>
std::vector<T> parse_list(std::string_view key, std::string_view v, F&& one) {
  std::vector<T> out;
  for (const auto& item : split_list(v)) out.push_back(one(key, item));
  if (out.empty()) throw ArgumentError("config: '" + std::string(key) + "' must not be empty");
  return out;
}

inline Method method_of(std::string_view key, std::string_view v) {
  if (auto m = parse_method(v)) return *m;
  throw ArgumentError("config: '" + std::string(key) + "' has unknown method '" + std::string(v) + "'");
}

}  // namespace detail

inline const std::set<std::string>& known_config_keys() {
  static const std::set<std::string> keys{
      "experiment.seed",         "experiment.datasets",          "experiment.dataset_dir",
      "experiment.output",       "experiment.methods",           "experiment.classifiers",
      "experiment.metrics",      "grid.smote_k",                 "grid.smute_k",
      "grid.csmoute_k_smote",    "grid.csmoute_k_smute",         "grid.csmoute_ratio",
      "options.fold_safe_scaling", "options.smute_originals_only", "options.threshold",
      "options.knn_k",           "options.category_order",       "options.class_column",
      "report.control",          "report.wilcoxon",              "report.alpha"};
  return keys;
}

/// Parses an INI configuration. Relative dataset and output paths resolve
/// against `base_dir`. Unknown keys and a missing seed are errors.
inline ExperimentConfig parse_config(const std::string& text, const std::filesystem::path& base_dir = {}) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    std::istringstream in(text);
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ParseError(e.line(), e.message());
  }

  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty()) throw ArgumentError("config: key '" + section + "' must sit inside a section");
    for (const auto& [key, value] : body) {
      if (!known_config_keys().count(section + "." + key)) {
        throw ArgumentError("config: unknown key '" + key + "' in section [" + section + "]");
      }
    }
  }
  auto get = [&](const std::string& path) -> std::optional<std::string> {
    if (auto v = tree.get_optional<std::string>(pt::ptree::path_type(path, '.'))) {
      return std::string(detail::trim(*v));
    }
    return std::nullopt;
  };
  auto resolve = [&](const std::string& p) {
    std::filesystem::path path(p);
    return path.is_absolute() || base_dir.empty() ? path : base_dir / path;
  };

  ExperimentConfig cfg;
  const auto seed = get("experiment.seed");
  if (!seed) throw ArgumentError("config: [experiment] seed is required");
  const auto seed_value = detail::parse_int("seed", *seed);
  if (seed_value < 0) throw ArgumentError("config: seed must be non-negative");
  cfg.seed = static_cast<std::uint64_t>(seed_value);

  if (auto v = get("experiment.datasets")) {
    for (const auto& p : detail::split_list(*v)) cfg.datasets.push_back(resolve(p));
  }
  if (auto v = get("experiment.dataset_dir")) {
    const auto dir = resolve(*v);
    if (!std::filesystem::is_directory(dir)) throw InputError("config: dataset_dir '" + dir.string() + "' is not a directory");
    std::vector<std::filesystem::path> found;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
      const auto ext = entry.path().extension().string();
      if (entry.is_regular_file() && (ext == ".dat" || ext == ".csv")) found.push_back(entry.path());
    }
    std::sort(found.begin(), found.end());
    cfg.datasets.insert(cfg.datasets.end(), found.begin(), found.end());
  }
  if (cfg.datasets.empty()) throw ArgumentError("config: no datasets given ([experiment] datasets or dataset_dir)");
  if (auto v = get("experiment.output")) cfg.output_dir = resolve(*v);

  if (auto v = get("experiment.methods")) cfg.methods = detail::parse_list<Method>("methods", *v, detail::method_of);
  if (auto v = get("experiment.classifiers")) {
    cfg.classifiers = detail::parse_list<ClassifierKind>("classifiers", *v, [](std::string_view k, std::string_view s) {
      if (auto c = parse_classifier(s)) return *c;
      throw ArgumentError("config: '" + std::string(k) + "' has unknown classifier '" + std::string(s) + "'");
    });
  }
  if (auto v = get("experiment.metrics")) {
    cfg.metrics = detail::parse_list<Metric>("metrics", *v, [](std::string_view k, std::string_view s) {
      if (auto m = parse_metric(s)) return *m;
      throw ArgumentError("config: '" + std::string(k) + "' has unknown metric '" + std::string(s) + "'");
    });
  }

  auto k_list = [&](const char* key, std::vector<long long>& dst) {
    if (auto v = get(std::string("grid.") + key)) {
      dst = detail::parse_list<long long>(key, *v, detail::parse_int);
      for (auto k : dst) {
        if (k < 1) throw ArgumentError(std::string("config: ") + key + " values must be at least 1");
      }
    }
  };
  k_list("smote_k", cfg.grid.smote_k);
  k_list("smute_k", cfg.grid.smute_k);
  k_list("csmoute_k_smote", cfg.grid.csmoute_k_smote);
  k_list("csmoute_k_smute", cfg.grid.csmoute_k_smute);
  if (auto v = get("grid.csmoute_ratio")) {
    cfg.grid.csmoute_ratio = detail::parse_list<double>("csmoute_ratio", *v, detail::parse_real);
    for (auto r : cfg.grid.csmoute_ratio) {
      if (!(r >= 0.0 && r <= 1.0)) throw ArgumentError("config: csmoute_ratio values must lie in [0, 1]");
    }
  }

  if (auto v = get("options.fold_safe_scaling")) cfg.fold_safe_scaling = detail::parse_bool("fold_safe_scaling", *v);
  if (auto v = get("options.smute_originals_only")) {
    cfg.smute_originals_only = detail::parse_bool("smute_originals_only", *v);
  }
  if (auto v = get("options.threshold")) cfg.threshold = detail::parse_real("threshold", *v);
  if (auto v = get("options.knn_k")) {
    cfg.knn_k = detail::parse_int("knn_k", *v);
    if (cfg.knn_k < 1) throw ArgumentError("config: knn_k must be at least 1");
  }
  if (auto v = get("options.category_order")) {
    if (*v == "first_appearance") cfg.category_order = CategoryOrder::first_appearance;
    else if (*v == "lexicographic") cfg.category_order = CategoryOrder::lexicographic;
    else throw ArgumentError("config: category_order must be first_appearance or lexicographic");
  }
  if (auto v = get("options.class_column")) cfg.class_column = *v;

  if (auto v = get("report.control")) cfg.control = detail::method_of("control", *v);
  if (auto v = get("report.wilcoxon")) {
    cfg.wilcoxon_pairs.clear();
    for (const auto& pair : detail::split_list(*v)) {
      const auto colon = pair.find(':');
      if (colon == std::string::npos) throw ArgumentError("config: wilcoxon pairs are written a:b, got '" + pair + "'");
      cfg.wilcoxon_pairs.emplace_back(detail::method_of("wilcoxon", detail::trim(std::string_view(pair).substr(0, colon))),
                                      detail::method_of("wilcoxon", detail::trim(std::string_view(pair).substr(colon + 1))));
    }
  }
  if (auto v = get("report.alpha")) {
    cfg.alpha = detail::parse_real("alpha", *v);
    if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) throw ArgumentError("config: alpha must lie in (0, 1)");
  }
  return cfg;
}

/// Canonical text of every setting that affects results. Thread count and
/// formatting of the source file do not appear.
inline std::string canonical_config(const ExperimentConfig& cfg) {
  std::ostringstream s;
  auto join = [&](const auto& items, auto&& fmt) {
    std::string out;
    for (const auto& it : items) {
      if (!out.empty()) out += ',';
      out += fmt(it);
    }
    return out;
  };
  auto str = [](auto v) { return std::string(to_string(v)); };
  auto num = [](auto v) { return detail::format_double(static_cast<double>(v)); };
  s << "seed=" << cfg.seed << '\n';
  s << "datasets=" << join(cfg.datasets, [](const auto& p) { return p.filename().string(); }) << '\n';
  s << "methods=" << join(cfg.methods, str) << '\n';
  s << "classifiers=" << join(cfg.classifiers, str) << '\n';
  s << "metrics=" << join(cfg.metrics, str) << '\n';
  s << "grid.smote_k=" << join(cfg.grid.smote_k, num) << '\n';
  s << "grid.smute_k=" << join(cfg.grid.smute_k, num) << '\n';
  s << "grid.csmoute_k_smote=" << join(cfg.grid.csmoute_k_smote, num) << '\n';
  s << "grid.csmoute_k_smute=" << join(cfg.grid.csmoute_k_smute, num) << '\n';
  s << "grid.csmoute_ratio=" << join(cfg.grid.csmoute_ratio, num) << '\n';
  s << "fold_safe_scaling=" << cfg.fold_safe_scaling << '\n';
  s << "smute_originals_only=" << cfg.smute_originals_only << '\n';
  s << "threshold=" << num(cfg.threshold) << '\n';
  s << "knn_k=" << cfg.knn_k << '\n';
  s << "category_order=" << (cfg.category_order == CategoryOrder::lexicographic ? "lexicographic" : "first_appearance")
    << '\n';
  s << "class_column=" << cfg.class_column << '\n';
  s << "control=" << to_string(cfg.control) << '\n';
  s << "wilcoxon=" << join(cfg.wilcoxon_pairs, [](const auto& p) {
    return std::string(to_string(p.first)) + ":" + std::string(to_string(p.second));
  }) << '\n';
  s << "alpha=" << num(cfg.alpha) << '\n';
  return s.str();
}

}  // namespace csmoute::experiment

#endif  // CSMOUTE_EXPERIMENT_CONFIG_HPP
