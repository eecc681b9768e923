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

#ifndef CSMOUTE_PREPROCESS_HPP
#define CSMOUTE_PREPROCESS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "csmoute/dataset.hpp"
#include "csmoute/diagnostics.hpp"
#include "csmoute/error.hpp"

namespace csmoute {

/// Order in which categorical levels receive integer codes.
enum class CategoryOrder {
  first_appearance,  // scan rows top to bottom
  lexicographic,     // byte-wise sort of the level text
};

/// Replaces each categorical column by codes 0..(cardinality-1) over the
/// levels that actually occur. Numeric columns are untouched.
inline LabeledDataset encode_categoricals(LabeledDataset ds,
                                          CategoryOrder order = CategoryOrder::first_appearance) {
  for (std::size_t c = 0; c < ds.columns.size(); ++c) {
    auto& col = ds.columns[c];
    if (col.kind != FeatureKind::categorical) continue;

    std::vector<std::size_t> seen;  // old codes in first-appearance order
    for (std::size_t r = 0; r < ds.rows(); ++r) {
      const auto code = static_cast<std::size_t>(ds.features(r, c));
      if (std::find(seen.begin(), seen.end(), code) == seen.end()) seen.push_back(code);
    }
    if (order == CategoryOrder::lexicographic) {
      std::sort(seen.begin(), seen.end(),
                [&](std::size_t a, std::size_t b) { return col.levels.at(a) < col.levels.at(b); });
    }
    std::vector<double> remap(col.levels.size(), 0.0);
    std::vector<std::string> levels;
    for (std::size_t i = 0; i < seen.size(); ++i) {
      remap.at(seen[i]) = static_cast<double>(i);
      levels.push_back(col.levels.at(seen[i]));
    }
    for (std::size_t r = 0; r < ds.rows(); ++r) {
      ds.features(r, c) = remap[static_cast<std::size_t>(ds.features(r, c))];
    }
    col.levels = std::move(levels);
    col.kind = FeatureKind::categorical_encoded;
  }
  return ds;
}

/// Per-column affine map x -> (x - mean) / scale.
struct Scaler {
  std::vector<double> mean;
  std::vector<double> scale;

  void apply(Matrix& m) const {
    if (m.cols() != mean.size()) throw ArgumentError("Scaler: width mismatch");
    for (std::size_t r = 0; r < m.rows(); ++r) {
      auto row = m.row(r);
      for (std::size_t c = 0; c < row.size(); ++c) row[c] = (row[c] - mean[c]) / scale[c];
    }
  }

  Matrix transform(Matrix m) const {
    apply(m);
    return m;
  }
};

/// Column means and population standard deviations. A constant column gets
/// scale 1, so it maps to all zeros.
inline Scaler fit_scaler(const Matrix& m, const WarningSink& warn = stderr_warnings(),
                         const std::vector<Column>* columns = nullptr) {
  Scaler s;
  s.mean.assign(m.cols(), 0.0);
  s.scale.assign(m.cols(), 1.0);
  if (m.rows() == 0) return s;
  const auto n = static_cast<double>(m.rows());
  for (std::size_t c = 0; c < m.cols(); ++c) {
    double sum = 0.0;
    double lo = m(0, c);
    double hi = m(0, c);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      sum += m(r, c);
      lo = std::min(lo, m(r, c));
      hi = std::max(hi, m(r, c));
    }
    const double mean = sum / n;
    s.mean[c] = mean;
    if (lo == hi) {
      // Exact constant: mean may differ from the value by rounding, so pin it.
      s.mean[c] = lo;
      const std::string col = columns ? (*columns)[c].name : std::to_string(c);
      warn("column '" + col + "' has zero variance; scaled to all zeros");
      continue;
    }
    double ss = 0.0;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      const double d = m(r, c) - mean;
      ss += d * d;
    }
    s.scale[c] = std::sqrt(ss / n);
  }
  return s;
}

struct Standardized {
  LabeledDataset dataset;
  Scaler scaler;
};

/// Zero mean, unit population variance per column. Categorical columns must
/// be encoded first.
inline Standardized standardize(const LabeledDataset& ds, const WarningSink& warn = stderr_warnings()) {
  for (const auto& col : ds.columns) {
    if (col.kind == FeatureKind::categorical) {
      throw ArgumentError("standardize: column '" + col.name + "' is categorical; encode it first");
    }
  }
  Standardized out{ds, fit_scaler(ds.features, warn, &ds.columns)};
  out.scaler.apply(out.dataset.features);
  return out;
}

/// Encode then standardize: the preprocessing applied before taxonomy,
/// resampling and classification.
inline LabeledDataset prepare(const LabeledDataset& ds, const WarningSink& warn = stderr_warnings(),
                              CategoryOrder order = CategoryOrder::first_appearance) {
  return standardize(encode_categoricals(ds, order), warn).dataset;
}

}  // namespace csmoute

#endif  // CSMOUTE_PREPROCESS_HPP
