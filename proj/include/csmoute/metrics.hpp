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

#ifndef CSMOUTE_METRICS_HPP
#define CSMOUTE_METRICS_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "csmoute/dataset.hpp"
#include "csmoute/diagnostics.hpp"
#include "csmoute/error.hpp"

/**
 * @file metrics.hpp
 *
 * @brief Binary classification metrics with the minority class as positive.
 */

namespace csmoute {

enum class Metric { f_measure, auc, g_mean };

inline constexpr std::array<Metric, 3> all_metrics{Metric::f_measure, Metric::auc, Metric::g_mean};

inline constexpr std::string_view to_string(Metric m) {
  switch (m) {
    case Metric::f_measure: return "f_measure";
    case Metric::auc: return "auc";
    case Metric::g_mean: return "g_mean";
  }
  return "?";
}

inline std::optional<Metric> parse_metric(std::string_view s) {
  for (auto m : all_metrics) {
    if (to_string(m) == s) return m;
  }
  if (s == "f1" || s == "fmeasure" || s == "f-measure") return Metric::f_measure;
  if (s == "gmean" || s == "g-mean") return Metric::g_mean;
  return std::nullopt;
}

struct Confusion {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;
  std::size_t fn = 0;

  std::size_t total() const noexcept { return tp + fp + tn + fn; }
  bool operator==(const Confusion&) const = default;
};

inline Confusion confusion(std::span<const ClassLabel> y_true, std::span<const ClassLabel> y_pred) {
  if (y_true.size() != y_pred.size()) throw ArgumentError("confusion: length mismatch");
  Confusion c;
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    const bool pos = y_true[i] == ClassLabel::minority;
    const bool hit = y_pred[i] == ClassLabel::minority;
    if (pos && hit) ++c.tp;
    else if (pos) ++c.fn;
    else if (hit) ++c.fp;
    else ++c.tn;
  }
  return c;
}

/// 1 when there is nothing to find and nothing was flagged, 0 when nothing
/// was found correctly.
inline double f_measure(std::size_t tp, std::size_t fp, std::size_t fn) {
  if (tp == 0) return (fp == 0 && fn == 0) ? 1.0 : 0.0;
  const double t = static_cast<double>(tp);
  const double precision = t / static_cast<double>(tp + fp);
  const double recall = t / static_cast<double>(tp + fn);
  return 2.0 * precision * recall / (precision + recall);
}

/// sqrt(sensitivity * specificity). The factor of a class absent from the
/// test set is taken as 1 and reported through `warn`.
inline double g_mean(std::size_t tp, std::size_t fn, std::size_t tn, std::size_t fp,
                     const WarningSink& warn = stderr_warnings()) {
  double sens = 1.0;
  double spec = 1.0;
  if (tp + fn > 0) sens = static_cast<double>(tp) / static_cast<double>(tp + fn);
  else warn("g_mean: no minority rows in the test set; sensitivity taken as 1");
  if (tn + fp > 0) spec = static_cast<double>(tn) / static_cast<double>(tn + fp);
  else warn("g_mean: no majority rows in the test set; specificity taken as 1");
  return std::sqrt(sens * spec);
}

/// Mann-Whitney AUC from average ranks: the share of (minority, majority)
/// pairs ordered correctly, ties counting one half. Empty when either class
/// is absent.
inline std::optional<double> auc(std::span<const double> scores, std::span<const ClassLabel> y_true) {
  if (scores.size() != y_true.size()) throw ArgumentError("auc: length mismatch");
  const std::size_t n = scores.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  double rank_sum = 0.0;
  std::size_t n_pos = 0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && scores[order[j]] == scores[order[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + 1 + j);  // mean of ranks i+1..j
    for (std::size_t t = i; t < j; ++t) {
      if (y_true[order[t]] == ClassLabel::minority) {
        rank_sum += avg;
        ++n_pos;
      }
    }
    i = j;
  }
  const std::size_t n_neg = n - n_pos;
  if (n_pos == 0 || n_neg == 0) return std::nullopt;
  const double p = static_cast<double>(n_pos);
  const double u = rank_sum - p * (p + 1.0) / 2.0;
  return u / (p * static_cast<double>(n_neg));
}

struct MetricReport {
  Confusion counts;
  double f_measure = 0.0;
  std::optional<double> auc;
  double g_mean = 0.0;

  std::optional<double> value(Metric m) const {
    switch (m) {
      case Metric::f_measure: return f_measure;
      case Metric::auc: return auc;
      case Metric::g_mean: return g_mean;
    }
    return std::nullopt;
  }
};

/// Scores at or above `threshold` predict the minority class.
inline MetricReport score_predictions(std::span<const double> scores, std::span<const ClassLabel> y_true,
                                      double threshold = 0.5, const WarningSink& warn = stderr_warnings()) {
  std::vector<ClassLabel> pred(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) {
    pred[i] = scores[i] >= threshold ? ClassLabel::minority : ClassLabel::majority;
  }
  MetricReport r;
  r.counts = confusion(y_true, pred);
  r.f_measure = f_measure(r.counts.tp, r.counts.fp, r.counts.fn);
  r.g_mean = g_mean(r.counts.tp, r.counts.fn, r.counts.tn, r.counts.fp, warn);
  r.auc = auc(scores, y_true);
  if (!r.auc) warn("auc: test set holds a single class; AUC reported as missing");
  return r;
}

}  // namespace csmoute

#endif  // CSMOUTE_METRICS_HPP
