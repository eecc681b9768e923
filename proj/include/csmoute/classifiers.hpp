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

#ifndef CSMOUTE_CLASSIFIERS_HPP
#define CSMOUTE_CLASSIFIERS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "csmoute/dataset.hpp"
#include "csmoute/error.hpp"
#include "csmoute/matrix.hpp"
#include "csmoute/neighbors.hpp"

namespace csmoute {

enum class ClassifierKind { logistic, knn };

inline constexpr std::string_view to_string(ClassifierKind k) {
  return k == ClassifierKind::logistic ? "lr" : "knn";
}

inline std::optional<ClassifierKind> parse_classifier(std::string_view s) {
  if (s == "lr" || s == "logistic") return ClassifierKind::logistic;
  if (s == "knn") return ClassifierKind::knn;
  return std::nullopt;
}

struct LogisticParams {
  double l2 = 1.0;
  double learning_rate = 0.1;
  int iterations = 1000;
};

struct ClassifierSpec {
  ClassifierKind kind = ClassifierKind::logistic;
  LogisticParams logistic;
  long long k = 5;  // knn only
};

inline double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

namespace detail {

inline void check_training_set(const Matrix& x, std::span<const ClassLabel> y) {
  if (x.rows() != y.size()) throw ArgumentError("classifier: feature rows and labels differ in length");
  bool has_min = false;
  bool has_maj = false;
  for (auto l : y) (l == ClassLabel::minority ? has_min : has_maj) = true;
  if (!has_min || !has_maj) throw ArgumentError("classifier: training set must contain both classes");
  for (double v : x.values()) {
    if (!std::isfinite(v)) throw ArgumentError("classifier: non-finite feature value");
  }
}

}  // namespace detail

/// Probability of the minority class: sigmoid(w.x + b).
struct LogisticModel {
  std::vector<double> weights;
  double bias = 0.0;

  double score(std::span<const double> row) const {
    double z = bias;
    for (std::size_t j = 0; j < weights.size(); ++j) z += weights[j] * row[j];
    return sigmoid(z);
  }

  std::vector<double> scores(const Matrix& x) const {
    std::vector<double> out(x.rows());
    for (std::size_t i = 0; i < x.rows(); ++i) out[i] = score(x.row(i));
    return out;
  }
};

/// Full-batch gradient descent from zero on
///   mean log-loss + (l2 / 2) * |w|^2,
/// minority labelled 1. The bias is not penalized.
inline LogisticModel train_logistic(const Matrix& x, std::span<const ClassLabel> y, const LogisticParams& p = {}) {
  detail::check_training_set(x, y);
  const std::size_t n = x.rows();
  const std::size_t d = x.cols();
  LogisticModel m;
  m.weights.assign(d, 0.0);
  std::vector<double> grad(d);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (int it = 0; it < p.iterations; ++it) {
    std::fill(grad.begin(), grad.end(), 0.0);
    double grad_b = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto row = x.row(i);
      const double target = y[i] == ClassLabel::minority ? 1.0 : 0.0;
      const double err = m.score(row) - target;
      for (std::size_t j = 0; j < d; ++j) grad[j] += err * row[j];
      grad_b += err;
    }
    for (std::size_t j = 0; j < d; ++j) {
      m.weights[j] -= p.learning_rate * (grad[j] * inv_n + p.l2 * m.weights[j]);
    }
    m.bias -= p.learning_rate * grad_b * inv_n;
  }
  return m;
}

/// Share of minority rows among the k nearest training rows.
struct KnnModel {
  Matrix train;
  std::vector<ClassLabel> labels;
  long long k = 5;

  std::vector<double> scores(const Matrix& x) const {
    const auto lists = knn_cross(train, x, k);
    std::vector<double> out(x.rows());
    for (std::size_t q = 0; q < lists.size(); ++q) {
      std::size_t hits = 0;
      for (auto i : lists[q].indices) hits += labels[i] == ClassLabel::minority ? 1 : 0;
      out[q] = static_cast<double>(hits) / static_cast<double>(lists[q].size());
    }
    return out;
  }
};

inline KnnModel train_knn(const Matrix& x, std::span<const ClassLabel> y, long long k = 5) {
  detail::check_training_set(x, y);
  if (k < 1) throw ArgumentError("knn classifier: k must be at least 1");
  return KnnModel{x, std::vector<ClassLabel>(y.begin(), y.end()), k};
}

/// Fits on (x_train, y_train) and returns a minority score in [0, 1] per
/// row of x_test.
inline std::vector<double> fit_predict(const ClassifierSpec& spec, const Matrix& x_train,
                                       std::span<const ClassLabel> y_train, const Matrix& x_test) {
  if (spec.kind == ClassifierKind::logistic) return train_logistic(x_train, y_train, spec.logistic).scores(x_test);
  return train_knn(x_train, y_train, spec.k).scores(x_test);
}

}  // namespace csmoute

#endif  // CSMOUTE_CLASSIFIERS_HPP
