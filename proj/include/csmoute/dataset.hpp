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

#ifndef CSMOUTE_DATASET_HPP
#define CSMOUTE_DATASET_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "csmoute/error.hpp"
#include "csmoute/matrix.hpp"

namespace csmoute {

enum class ClassLabel : std::uint8_t { minority, majority };

/// `categorical` columns hold codes that index `Column::levels` in
/// declaration order; encode_categoricals() renumbers them and marks the
/// column `categorical_encoded`.
enum class FeatureKind : std::uint8_t { numeric, categorical, categorical_encoded };

struct Column {
  std::string name;
  FeatureKind kind = FeatureKind::numeric;
  std::vector<std::string> levels;  // code -> text, categorical columns only
};

/// Binary dataset: features, per-row class, and column metadata. The minority
/// class is always the smaller one (an exact tie keeps the loader's order).
struct LabeledDataset {
  std::string name;
  Matrix features;
  std::vector<ClassLabel> labels;
  std::vector<Column> columns;
  std::string class_column = "Class";
  std::string minority_name = "positive";
  std::string majority_name = "negative";

  std::size_t rows() const noexcept { return features.rows(); }

  std::size_t count(ClassLabel label) const {
    return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), label));
  }

  std::vector<std::size_t> rows_of(ClassLabel label) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] == label) out.push_back(i);
    }
    return out;
  }

  /// Throws ValidationError when any invariant is broken.
  void validate() const {
    if (features.rows() != labels.size()) {
      throw ValidationError("dataset '" + name + "': " + std::to_string(features.rows()) +
                            " feature rows but " + std::to_string(labels.size()) + " labels");
    }
    if (columns.size() != features.cols()) {
      throw ValidationError("dataset '" + name + "': column metadata does not match width");
    }
    const std::size_t minority = count(ClassLabel::minority);
    const std::size_t majority = labels.size() - minority;
    if (minority == 0 || majority == 0) {
      throw ValidationError("dataset '" + name + "': both classes must be present");
    }
    if (minority > majority) {
      throw ValidationError("dataset '" + name + "': minority class is larger than majority");
    }
    for (double v : features.values()) {
      if (!std::isfinite(v)) throw ValidationError("dataset '" + name + "': non-finite feature value");
    }
  }
};

namespace detail {

/// Maps per-level counts to class roles: the rarer level is the minority, a
/// tie goes to the level declared (or seen) first.
inline std::pair<std::size_t, std::size_t> assign_roles(const std::vector<std::size_t>& counts,
                                                        const std::string& dataset) {
  std::vector<std::size_t> present;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] > 0) present.push_back(i);
  }
  if (present.size() < 2) throw ValidationError("dataset '" + dataset + "' contains a single class");
  if (present.size() > 2) throw ValidationError("dataset '" + dataset + "' has more than two classes");
  const std::size_t a = present[0];
  const std::size_t b = present[1];
  return counts[b] < counts[a] ? std::pair{b, a} : std::pair{a, b};
}

}  // namespace detail

/// Builds an all-numeric dataset with generated column names.
inline LabeledDataset make_dataset(std::string name, Matrix features, std::vector<ClassLabel> labels) {
  LabeledDataset ds;
  ds.name = std::move(name);
  ds.columns.resize(features.cols());
  for (std::size_t c = 0; c < ds.columns.size(); ++c) ds.columns[c].name = "x" + std::to_string(c + 1);
  ds.features = std::move(features);
  ds.labels = std::move(labels);
  ds.validate();
  return ds;
}

struct DatasetSummary {
  double imbalance_ratio = 1.0;
  std::size_t n_samples = 0;
  std::size_t n_features = 0;
  std::size_t n_minority = 0;
  std::size_t n_majority = 0;
};

inline DatasetSummary summarize(const LabeledDataset& ds) {
  DatasetSummary s;
  s.n_samples = ds.rows();
  s.n_features = ds.features.cols();
  s.n_minority = ds.count(ClassLabel::minority);
  s.n_majority = s.n_samples - s.n_minority;
  if (s.n_minority == 0) throw ValidationError("dataset '" + ds.name + "' has no minority rows");
  s.imbalance_ratio = static_cast<double>(s.n_majority) / static_cast<double>(s.n_minority);
  return s;
}

/// Features of one class, in row order.
inline Matrix class_rows(const LabeledDataset& ds, ClassLabel label) {
  const auto idx = ds.rows_of(label);
  return ds.features.select_rows(idx);
}

}  // namespace csmoute

#endif  // CSMOUTE_DATASET_HPP
