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

#ifndef CSMOUTE_EVALUATION_HPP
#define CSMOUTE_EVALUATION_HPP

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "csmoute/classifiers.hpp"
#include "csmoute/dataset.hpp"
#include "csmoute/diagnostics.hpp"
#include "csmoute/error.hpp"
#include "csmoute/folds.hpp"
#include "csmoute/metrics.hpp"
#include "csmoute/preprocess.hpp"
#include "csmoute/resampling.hpp"
#include "csmoute/rng.hpp"

/**
 * @file evaluation.hpp
 *
 * @brief Cross-validated evaluation of a (resampler, classifier) pair.
 *
 * Per fold: scale, resample the training half, fit, score the test half.
 * Test rows never reach the resampler or the classifier fit.
 */

namespace csmoute {

enum class Method { none, rus, ros, smote, smute, csmoute };

inline constexpr std::array<Method, 6> all_methods{Method::none,  Method::rus,   Method::ros,
                                                   Method::smote, Method::smute, Method::csmoute};

inline constexpr std::string_view to_string(Method m) {
  switch (m) {
    case Method::none: return "none";
    case Method::rus: return "rus";
    case Method::ros: return "ros";
    case Method::smote: return "smote";
    case Method::smute: return "smute";
    case Method::csmoute: return "csmoute";
  }
  return "?";
}

inline std::optional<Method> parse_method(std::string_view s) {
  for (auto m : all_methods) {
    if (to_string(m) == s) return m;
  }
  return std::nullopt;
}

/// Every method balances the classes completely; smote and smute are the
/// csmoute endpoints ratio = 1 and ratio = 0.
struct ResamplerSpec {
  Method method = Method::none;
  long long k_smote = 5;
  long long k_smute = 5;
  double ratio = 0.5;
  bool smute_originals_only = false;
};

struct Resampled {
  Matrix features;
  std::vector<ClassLabel> labels;
};

/// Resamples (x, y) and returns the rows of the larger class followed by
/// those of the smaller one. A training half can come out with more minority
/// than majority rows; the roles then follow size and the labels are kept.
inline Resampled apply_resampler(const ResamplerSpec& spec, const Matrix& x, std::span<const ClassLabel> y,
                                 std::uint64_t seed) {
  std::vector<std::size_t> min_ids;
  std::vector<std::size_t> maj_ids;
  for (std::size_t i = 0; i < y.size(); ++i) (y[i] == ClassLabel::minority ? min_ids : maj_ids).push_back(i);
  const bool swapped = maj_ids.size() < min_ids.size();
  if (swapped) std::swap(maj_ids, min_ids);
  const Matrix maj = x.select_rows(maj_ids);
  const Matrix min = x.select_rows(min_ids);
  const auto gap = static_cast<long long>(maj.rows() - min.rows());

  Matrix maj_out;
  Matrix min_out;
  switch (spec.method) {
    case Method::none:
      maj_out = maj;
      min_out = min;
      break;
    case Method::rus: {
      Rng rng = Rng::derive(seed, "rus");
      maj_out = rus(maj, gap, rng);
      min_out = min;
      break;
    }
    case Method::ros: {
      Rng rng = Rng::derive(seed, "ros");
      maj_out = maj;
      min_out = ros(min, gap, rng);
      break;
    }
    case Method::smote:
    case Method::smute:
    case Method::csmoute: {
      ResampleConfig cfg;
      cfg.k_smote = spec.k_smote;
      cfg.k_smute = spec.k_smute;
      cfg.ratio = spec.method == Method::smote ? 1.0 : spec.method == Method::smute ? 0.0 : spec.ratio;
      cfg.seed = seed;
      cfg.smute_originals_only = spec.smute_originals_only;
      auto res = csmoute(maj, min, cfg);
      maj_out = std::move(res.majority_out);
      min_out = std::move(res.minority_out);
      break;
    }
  }
  Resampled out;
  out.features = std::move(maj_out);
  out.labels.assign(out.features.rows(), swapped ? ClassLabel::minority : ClassLabel::majority);
  if (out.features.empty()) out.features = Matrix(0, min_out.cols());
  out.features.append_rows(min_out);
  out.labels.resize(out.features.rows(), swapped ? ClassLabel::majority : ClassLabel::minority);
  return out;
}

struct EvaluationOptions {
  bool fold_safe_scaling = false;  // fit the scaler on each training half instead of the full dataset
  double threshold = 0.5;
  WarningSink warn = ignore_warnings();
};

struct FoldResult {
  std::size_t repetition = 0;
  std::size_t fold = 0;
  MetricReport report;
};

struct EvaluationResult {
  std::vector<FoldResult> folds;
  std::array<std::optional<double>, 3> averages{};  // indexed like all_metrics

  std::optional<double> average(Metric m) const { return averages[static_cast<std::size_t>(m)]; }
};

inline std::uint64_t fold_seed(std::uint64_t seed, std::size_t repetition, std::size_t fold) {
  return derive_seed(derive_seed(seed, "resample"), static_cast<std::uint64_t>(repetition * 2 + fold));
}

namespace detail {

inline void assert_disjoint(const Split& s) {
  std::vector<std::size_t> common;
  std::set_intersection(s.train.begin(), s.train.end(), s.test.begin(), s.test.end(), std::back_inserter(common));
  if (!common.empty()) throw std::logic_error("evaluation: test row " + std::to_string(common.front()) + " leaked into training");
}

}  // namespace detail

/// Runs every fold of `plan`. `ds` must have no unencoded categorical
/// columns. The resampler of fold (r, f) draws from fold_seed(seed, r, f),
/// so the result does not depend on the order in which folds run.
inline EvaluationResult evaluate_plan(const LabeledDataset& ds, const FoldPlan& plan, const ResamplerSpec& resampler,
                                      const ClassifierSpec& classifier, std::uint64_t seed,
                                      const EvaluationOptions& options = {}) {
  const LabeledDataset scaled = options.fold_safe_scaling ? ds : standardize(ds, options.warn).dataset;

  EvaluationResult result;
  for (std::size_t rep = 0; rep < plan.repetitions(); ++rep) {
    for (std::size_t fold = 0; fold < 2; ++fold) {
      const Split split = plan.split(rep, fold);
      detail::assert_disjoint(split);
      Matrix x_train = scaled.features.select_rows(split.train);
      Matrix x_test = scaled.features.select_rows(split.test);
      std::vector<ClassLabel> y_train;
      std::vector<ClassLabel> y_test;
      for (auto i : split.train) y_train.push_back(scaled.labels[i]);
      for (auto i : split.test) y_test.push_back(scaled.labels[i]);
      if (options.fold_safe_scaling) {
        const Scaler s = fit_scaler(x_train, options.warn, &ds.columns);
        s.apply(x_train);
        s.apply(x_test);
      }

      Resampled train;
      std::vector<double> scores;
      try {
        train = apply_resampler(resampler, x_train, y_train, fold_seed(seed, rep, fold));
        scores = fit_predict(classifier, train.features, train.labels, x_test);
      } catch (const ConfigurationError& e) {
        throw FoldError(rep, fold, e.what());
      }
      result.folds.push_back({rep, fold, score_predictions(scores, y_test, options.threshold, options.warn)});
    }
  }

  for (std::size_t m = 0; m < all_metrics.size(); ++m) {
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& f : result.folds) {
      if (auto v = f.report.value(all_metrics[m])) {
        sum += *v;
        ++n;
      }
    }
    if (n < result.folds.size()) {
      options.warn(std::string(to_string(all_metrics[m])) + ": " + std::to_string(result.folds.size() - n) +
                   " fold(s) without a value excluded from the average");
    }
    if (n > 0) result.averages[m] = sum / static_cast<double>(n);
  }
  return result;
}

/// 5x2 cross-validation with folds drawn from `seed`.
inline EvaluationResult evaluate(const LabeledDataset& ds, const ResamplerSpec& resampler,
                                 const ClassifierSpec& classifier, std::uint64_t seed,
                                 const EvaluationOptions& options = {}) {
  return evaluate_plan(ds, make_fold_plan(ds, seed), resampler, classifier, seed, options);
}

}  // namespace csmoute

#endif  // CSMOUTE_EVALUATION_HPP
