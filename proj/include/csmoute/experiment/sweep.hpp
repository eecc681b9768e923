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

#ifndef CSMOUTE_EXPERIMENT_SWEEP_HPP
#define CSMOUTE_EXPERIMENT_SWEEP_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "csmoute/detail/special_functions.hpp"
#include "csmoute/detail/text.hpp"
#include "csmoute/evaluation.hpp"
#include "csmoute/experiment/benchmark.hpp"
#include "csmoute/experiment/parallel.hpp"

namespace csmoute::experiment {

struct SweepOptions {
  std::vector<double> ratios{0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  std::vector<ClassifierKind> classifiers{ClassifierKind::logistic};
  std::vector<Metric> metrics{all_metrics.begin(), all_metrics.end()};
  long long k_smote = 5;
  long long k_smute = 5;
  std::uint64_t seed = 0;
  bool fold_safe_scaling = false;
  bool smute_originals_only = false;
  double threshold = 0.5;
  long long knn_k = 5;
};

struct SweepRow {
  ClassifierKind classifier = ClassifierKind::logistic;
  double ratio = 0.0;
  Metric metric = Metric::f_measure;
  double mean = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::size_t n_datasets = 0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::vector<CellFailure> failures;
};

struct Interval {
  double mean = 0.0;
  double low = 0.0;
  double high = 0.0;
};

/// Mean with a two-sided t interval over the sample; a single value gives a
/// zero-width interval.
inline Interval t_interval(std::span<const double> values, double level = 0.95) {
  if (values.empty()) throw ArgumentError("t_interval: no values");
  const double n = static_cast<double>(values.size());
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= n;
  if (values.size() == 1) return {mean, mean, mean};
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double se = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
  const double half = csmoute::detail::student_t_quantile(0.5 + level / 2.0, n - 1.0) * se;
  return {mean, mean - half, mean + half};
}

/// CSMOUTE 5x2 averages per dataset at every ratio, then the across-dataset
/// mean and 95% interval. Rows come grouped by classifier, then metric, with
/// ratios ascending. Datasets whose run fails at some ratio are reported in
/// `failures` and left out of that ratio's row.
inline SweepResult run_sweep(const std::vector<DatasetEntry>& datasets, SweepOptions opts, std::size_t threads) {
  std::sort(opts.ratios.begin(), opts.ratios.end());
  opts.ratios.erase(std::unique(opts.ratios.begin(), opts.ratios.end()), opts.ratios.end());
  for (double r : opts.ratios) {
    if (!(r >= 0.0 && r <= 1.0)) throw ArgumentError("sweep: ratios must lie in [0, 1]");
  }
  const std::size_t nd = datasets.size();
  const std::size_t nr = opts.ratios.size();
  const std::size_t nc = opts.classifiers.size();
  std::vector<std::optional<EvaluationResult>> results(nd * nr * nc);
  std::vector<std::optional<CellFailure>> failed(results.size());

  parallel_for(results.size(), threads, [&](std::size_t i) {
    const std::size_t d = i / (nr * nc);
    const std::size_t r = (i / nc) % nr;
    const std::size_t c = i % nc;
    ResamplerSpec spec;
    spec.method = Method::csmoute;
    spec.k_smote = opts.k_smote;
    spec.k_smute = opts.k_smute;
    spec.ratio = opts.ratios[r];
    spec.smute_originals_only = opts.smute_originals_only;
    ClassifierSpec clf;
    clf.kind = opts.classifiers[c];
    clf.k = opts.knn_k;
    EvaluationOptions eo;
    eo.fold_safe_scaling = opts.fold_safe_scaling;
    eo.threshold = opts.threshold;
    try {
      const auto seed = outer_seed(opts.seed, datasets[d].name);
      results[i] = evaluate_plan(datasets[d].data, make_fold_plan(datasets[d].data, seed), spec, clf, seed, eo);
    } catch (const Error& e) {
      failed[i] = CellFailure{datasets[d].name, Method::csmoute, clf.kind,
                              "ratio " + csmoute::detail::format_double(opts.ratios[r]) + ": " + e.what()};
    }
  });

  SweepResult out;
  for (const auto& f : failed) {
    if (f) out.failures.push_back(*f);
  }
  for (std::size_t c = 0; c < nc; ++c) {
    for (auto metric : opts.metrics) {
      for (std::size_t r = 0; r < nr; ++r) {
        std::vector<double> values;
        for (std::size_t d = 0; d < nd; ++d) {
          const auto& res = results[(d * nr + r) * nc + c];
          if (res) {
            if (auto v = res->average(metric)) values.push_back(*v);
          }
        }
        if (values.empty()) continue;
        const auto ci = t_interval(values);
        out.rows.push_back({opts.classifiers[c], opts.ratios[r], metric, ci.mean, ci.low, ci.high, values.size()});
      }
    }
  }
  return out;
}

inline void write_sweep_csv(const SweepResult& r, std::ostream& out) {
  using csmoute::detail::format_double;
  out << "classifier,ratio,metric,mean,ci_low,ci_high,n_datasets\n";
  for (const auto& row : r.rows) {
    out << to_string(row.classifier) << ',' << format_double(row.ratio) << ',' << to_string(row.metric) << ','
        << format_double(row.mean) << ',' << format_double(row.ci_low) << ',' << format_double(row.ci_high) << ','
        << row.n_datasets << '\n';
  }
}

}  // namespace csmoute::experiment

#endif  // CSMOUTE_EXPERIMENT_SWEEP_HPP
