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

#ifndef CSMOUTE_TESTS_SUPPORT_HPP
#define CSMOUTE_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <deque>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "csmoute/csmoute.hpp"

namespace csmoute::testing {

inline std::filesystem::path data_dir() { return CSMOUTE_TEST_DATA_DIR; }

inline std::filesystem::path keel_file(const std::string& name) { return data_dir() / "keel" / (name + ".dat"); }

/// Replays fixed draws; throws once the script runs out.
struct ScriptedSource {
  std::deque<std::size_t> indices;
  std::deque<double> units;

  std::size_t index(std::size_t n) {
    if (indices.empty()) throw std::logic_error("scripted source: no index left");
    const auto v = indices.front();
    indices.pop_front();
    if (v >= n) throw std::logic_error("scripted source: index out of range");
    return v;
  }

  double unit() {
    if (units.empty()) throw std::logic_error("scripted source: no unit left");
    const auto v = units.front();
    units.pop_front();
    return v;
  }
};

inline Matrix random_matrix(std::size_t rows, std::size_t cols, Rng& rng, double scale = 10.0) {
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = (rng.unit() - 0.5) * scale;
  }
  return m;
}

/// Points on a small integer lattice, so exact distance ties are common.
inline Matrix lattice_matrix(std::size_t rows, std::size_t cols, Rng& rng, std::size_t side = 4) {
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = static_cast<double>(rng.index(side));
  }
  return m;
}

inline LabeledDataset two_blobs(std::size_t n_majority, std::size_t n_minority, std::size_t cols, Rng& rng,
                                double shift = 1.5) {
  Matrix x(n_majority + n_minority, cols);
  std::vector<ClassLabel> y;
  for (std::size_t r = 0; r < x.rows(); ++r) {
    const bool minority = r >= n_majority;
    for (std::size_t c = 0; c < cols; ++c) x(r, c) = (rng.unit() - 0.5) * 4.0 + (minority ? shift : 0.0);
    y.push_back(minority ? ClassLabel::minority : ClassLabel::majority);
  }
  return make_dataset("blobs", std::move(x), std::move(y));
}

/// Distance from p to the segment [a, b].
inline double segment_distance(std::span<const double> p, std::span<const double> a, std::span<const double> b) {
  double ab2 = 0.0;
  double t = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    ab2 += (b[i] - a[i]) * (b[i] - a[i]);
    t += (p[i] - a[i]) * (b[i] - a[i]);
  }
  t = ab2 > 0.0 ? std::clamp(t / ab2, 0.0, 1.0) : 0.0;
  double d2 = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double q = a[i] + t * (b[i] - a[i]);
    d2 += (p[i] - q) * (p[i] - q);
  }
  return std::sqrt(d2);
}

}  // namespace csmoute::testing

#endif  // CSMOUTE_TESTS_SUPPORT_HPP
