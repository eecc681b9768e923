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

#ifndef CSMOUTE_STATS_HPP
#define CSMOUTE_STATS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "csmoute/detail/special_functions.hpp"
#include "csmoute/error.hpp"

/**
 * @file stats.hpp
 *
 * @brief Nonparametric comparison of methods over datasets.
 *
 * Conventions: larger metric values are better and receive smaller rank
 * numbers; tied values share the average of the ranks they span.
 */

namespace csmoute {

struct TestResult {
  double statistic = 0.0;
  double p_value = 1.0;
  std::size_t n_effective = 0;
};

/// Ranks with ties averaged. `descending` ranks the largest value 1.
inline std::vector<double> average_ranks(std::span<const double> values, bool descending = true) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return descending ? values[a] > values[b] : values[a] < values[b];
  });
  std::vector<double> ranks(n);
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && values[order[j]] == values[order[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t t = i; t < j; ++t) ranks[order[t]] = avg;
    i = j;
  }
  return ranks;
}

inline constexpr std::size_t wilcoxon_min_effective = 5;
inline constexpr std::size_t wilcoxon_exact_limit = 20;

/// Two-sided Wilcoxon signed-rank test on a - b. Zero differences are
/// dropped. Exact null distribution up to 20 non-zero differences (ties
/// handled through half-integer ranks), normal approximation with tie
/// correction beyond. The statistic is min(W+, W-).
inline TestResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ArgumentError("wilcoxon: samples differ in length");
  std::vector<double> diffs;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    if (d != 0.0) diffs.push_back(d);
  }
  const std::size_t n = diffs.size();
  if (n == 0) return {0.0, 1.0, 0};
  if (n < wilcoxon_min_effective) {
    throw SampleTooSmallError("wilcoxon: " + std::to_string(n) + " non-zero difference(s), at least " +
                              std::to_string(wilcoxon_min_effective) + " are needed");
  }
  std::vector<double> magnitude(n);
  for (std::size_t i = 0; i < n; ++i) magnitude[i] = std::fabs(diffs[i]);
  const auto ranks = average_ranks(magnitude, false);
  double w_plus = 0.0;
  double w_minus = 0.0;
  for (std::size_t i = 0; i < n; ++i) (diffs[i] > 0 ? w_plus : w_minus) += ranks[i];
  const double w = std::min(w_plus, w_minus);

  TestResult res{w, 1.0, n};
  if (n <= wilcoxon_exact_limit) {
    // Doubled ranks are integers; count sign assignments per doubled W+.
    std::vector<std::size_t> doubled(n);
    std::size_t total = 0;
    for (std::size_t i = 0; i < n; ++i) {
      doubled[i] = static_cast<std::size_t>(std::llround(2.0 * ranks[i]));
      total += doubled[i];
    }
    std::vector<double> ways(total + 1, 0.0);
    ways[0] = 1.0;
    for (auto r : doubled) {
      for (std::size_t s = total; s >= r; --s) ways[s] += ways[s - r];
    }
    const auto limit = static_cast<std::size_t>(std::llround(2.0 * w));
    double tail = 0.0;
    for (std::size_t s = 0; s <= limit; ++s) tail += ways[s];
    res.p_value = std::min(1.0, 2.0 * tail / std::ldexp(1.0, static_cast<int>(n)));
    return res;
  }

  const double nn = static_cast<double>(n);
  const double mean = nn * (nn + 1.0) / 4.0;
  double var = nn * (nn + 1.0) * (2.0 * nn + 1.0) / 24.0;
  std::vector<double> sorted = magnitude;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && sorted[j] == sorted[i]) ++j;
    const double t = static_cast<double>(j - i);
    var -= (t * t * t - t) / 48.0;
    i = j;
  }
  if (var <= 0.0) return res;
  const double z = (w - mean) / std::sqrt(var);
  res.p_value = std::min(1.0, 2.0 * detail::normal_sf(std::fabs(z)));
  return res;
}

struct WinLossTie {
  std::size_t wins = 0;
  std::size_t losses = 0;
  std::size_t ties = 0;
};

/// Element-wise comparison of a against b; |a - b| <= tolerance is a tie.
inline WinLossTie win_loss_tie(std::span<const double> a, std::span<const double> b, double tolerance = 0.0) {
  if (a.size() != b.size()) throw ArgumentError("win_loss_tie: samples differ in length");
  WinLossTie out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::fabs(a[i] - b[i]) <= tolerance) ++out.ties;
    else if (a[i] > b[i]) ++out.wins;
    else ++out.losses;
  }
  return out;
}

/// values[method][dataset]; ranks has the same shape.
struct ComparisonTable {
  std::vector<std::string> methods;
  std::vector<std::string> datasets;
  std::vector<std::vector<double>> values;
  std::vector<std::vector<double>> ranks;
  std::vector<double> average_ranks;
};

struct FriedmanResult {
  ComparisonTable table;
  TestResult test;
};

/// Friedman chi-square over per-dataset ranks, k - 1 degrees of freedom.
inline FriedmanResult friedman(std::vector<std::vector<double>> values, std::vector<std::string> methods = {},
                               std::vector<std::string> datasets = {}) {
  const std::size_t k = values.size();
  if (k < 2) throw ArgumentError("friedman: at least 2 methods are needed");
  const std::size_t n = values[0].size();
  if (n < 2) throw ArgumentError("friedman: at least 2 datasets are needed");
  for (const auto& row : values) {
    if (row.size() != n) throw ArgumentError("friedman: ragged value matrix");
  }
  FriedmanResult out;
  auto& t = out.table;
  t.methods = std::move(methods);
  t.datasets = std::move(datasets);
  t.ranks.assign(k, std::vector<double>(n));
  t.average_ranks.assign(k, 0.0);
  std::vector<double> column(k);
  for (std::size_t d = 0; d < n; ++d) {
    for (std::size_t m = 0; m < k; ++m) column[m] = values[m][d];
    const auto r = average_ranks(column, true);
    for (std::size_t m = 0; m < k; ++m) {
      t.ranks[m][d] = r[m];
      t.average_ranks[m] += r[m];
    }
  }
  const double kk = static_cast<double>(k);
  const double nn = static_cast<double>(n);
  double sum_sq = 0.0;
  for (auto& r : t.average_ranks) {
    r /= nn;
    sum_sq += r * r;
  }
  t.values = std::move(values);
  double stat = 12.0 * nn / (kk * (kk + 1.0)) * (sum_sq - kk * (kk + 1.0) * (kk + 1.0) / 4.0);
  if (std::fabs(stat) < 1e-12) stat = 0.0;
  out.test = {stat, detail::chi_square_sf(stat, kk - 1.0), n};
  return out;
}

struct HolmResult {
  std::vector<double> adjusted;
  std::vector<bool> significant;
};

/// Holm step-down adjustment; outputs follow the input order.
inline HolmResult holm(std::span<const double> p_values, double alpha = 0.05) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ArgumentError("holm: alpha must lie in (0, 1)");
  const std::size_t m = p_values.size();
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return p_values[a] < p_values[b]; });
  HolmResult out{std::vector<double>(m), std::vector<bool>(m)};
  double running = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    const double adj = std::min(1.0, static_cast<double>(m - j) * p_values[order[j]]);
    running = std::max(running, adj);
    out.adjusted[order[j]] = running;
  }
  for (std::size_t i = 0; i < m; ++i) out.significant[i] = out.adjusted[i] <= alpha;
  return out;
}

struct PosthocComparison {
  std::size_t method = 0;
  double z = 0.0;
  double p_value = 1.0;
  double adjusted_p = 1.0;
  bool significant = false;
};

/// Compares every method's average rank with the control's,
/// z = (R_i - R_c) / sqrt(k (k + 1) / (6 N)), two-sided normal p values,
/// Holm-adjusted. One entry per non-control method, in method order.
inline std::vector<PosthocComparison> holm_posthoc(std::span<const double> average_ranks, std::size_t n_datasets,
                                                   std::size_t control, double alpha = 0.05) {
  const std::size_t k = average_ranks.size();
  if (control >= k) throw ArgumentError("holm_posthoc: control index out of range");
  if (n_datasets == 0) throw ArgumentError("holm_posthoc: no datasets");
  const double kk = static_cast<double>(k);
  const double se = std::sqrt(kk * (kk + 1.0) / (6.0 * static_cast<double>(n_datasets)));
  std::vector<PosthocComparison> out;
  std::vector<double> raw;
  for (std::size_t i = 0; i < k; ++i) {
    if (i == control) continue;
    PosthocComparison c;
    c.method = i;
    c.z = (average_ranks[i] - average_ranks[control]) / se;
    c.p_value = std::min(1.0, 2.0 * detail::normal_sf(std::fabs(c.z)));
    raw.push_back(c.p_value);
    out.push_back(c);
  }
  const auto adj = holm(raw, alpha);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i].adjusted_p = adj.adjusted[i];
    out[i].significant = adj.significant[i];
  }
  return out;
}

/// Sample correlation with a two-sided t-test on n - 2 degrees of freedom.
inline TestResult pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ArgumentError("pearson: samples differ in length");
  const std::size_t n = x.size();
  if (n < 3) throw SampleTooSmallError("pearson: at least 3 pairs are needed");
  const double nn = static_cast<double>(n);
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / nn;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / nn;
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw UndefinedCorrelationError("pearson: constant input");
  const double r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  const double dof = nn - 2.0;
  TestResult res{r, 0.0, n};
  if (std::fabs(r) < 1.0) {
    const double t = r * std::sqrt(dof / (1.0 - r * r));
    res.p_value = detail::student_t_two_sided(t, dof);
  }
  return res;
}

}  // namespace csmoute

#endif  // CSMOUTE_STATS_HPP
