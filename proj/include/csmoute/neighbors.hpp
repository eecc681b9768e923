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

#ifndef CSMOUTE_NEIGHBORS_HPP
#define CSMOUTE_NEIGHBORS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "csmoute/error.hpp"
#include "csmoute/matrix.hpp"

/**
 * @file neighbors.hpp
 *
 * @brief Exact brute-force k-nearest-neighbor queries under Euclidean distance.
 *
 * Candidates are ordered by (squared distance, row index), so equal distances
 * always resolve toward the lower index and results are reproducible bit for
 * bit. The query row itself is excluded by index only: a different row with
 * identical coordinates is a legitimate neighbor at distance zero.
 */

namespace csmoute {

struct NeighborList {
  std::size_t query_index = 0;
  std::vector<std::size_t> indices;  // nearest first
  std::vector<double> distances;     // Euclidean, non-decreasing

  std::size_t size() const noexcept { return indices.size(); }
};

/// Marks "no row to exclude".
inline constexpr std::size_t no_self = std::numeric_limits<std::size_t>::max();

inline double squared_distance(std::span<const double> a, std::span<const double> b) noexcept {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return sum;
}

namespace detail {

inline void check_knn_args(const Matrix& points, long long k) {
  if (k <= 0) throw ArgumentError("knn: k must be at least 1, got " + std::to_string(k));
  if (points.rows() == 0) throw ArgumentError("knn: empty point set");
}

/// Core search over rows accepted by `keep`. Works on squared distances;
/// sqrt is monotone, so the order is the Euclidean order.
template <class Keep>
NeighborList nearest(const Matrix& points, std::span<const double> query, std::size_t k,
                     std::size_t query_index, Keep&& keep) {
  std::vector<std::pair<double, std::size_t>> cand;
  cand.reserve(points.rows());
  for (std::size_t i = 0; i < points.rows(); ++i) {
    if (!keep(i)) continue;
    cand.emplace_back(squared_distance(points.row(i), query), i);
  }
  const std::size_t take = std::min(k, cand.size());
  std::partial_sort(cand.begin(), cand.begin() + static_cast<std::ptrdiff_t>(take), cand.end());
  NeighborList out;
  out.query_index = query_index;
  out.indices.reserve(take);
  out.distances.reserve(take);
  for (std::size_t i = 0; i < take; ++i) {
    out.indices.push_back(cand[i].second);
    out.distances.push_back(std::sqrt(cand[i].first));
  }
  return out;
}

}  // namespace detail

/// The min(k, n-1) nearest rows to `points.row(query_row)`, excluding itself.
inline NeighborList knn(const Matrix& points, std::size_t query_row, long long k) {
  detail::check_knn_args(points, k);
  if (query_row >= points.rows()) throw ArgumentError("knn: query row out of range");
  return detail::nearest(points, points.row(query_row), static_cast<std::size_t>(k), query_row,
                         [query_row](std::size_t i) { return i != query_row; });
}

/// Like knn(), restricted to rows for which `eligible(i)` holds.
template <class Pred>
NeighborList knn_where(const Matrix& points, std::size_t query_row, long long k, Pred&& eligible) {
  detail::check_knn_args(points, k);
  if (query_row >= points.rows()) throw ArgumentError("knn: query row out of range");
  return detail::nearest(points, points.row(query_row), static_cast<std::size_t>(k), query_row,
                         [&](std::size_t i) { return i != query_row && eligible(i); });
}

/// Neighbors in `points` of each row of `queries`. `self_index[q]`, when
/// given and not `no_self`, names a row of `points` to leave out for query q.
inline std::vector<NeighborList> knn_cross(const Matrix& points, const Matrix& queries, long long k,
                                           std::span<const std::size_t> self_index = {}) {
  detail::check_knn_args(points, k);
  if (queries.rows() > 0 && queries.cols() != points.cols()) throw ArgumentError("knn_cross: width mismatch");
  if (!self_index.empty() && self_index.size() != queries.rows()) {
    throw ArgumentError("knn_cross: self_index must have one entry per query");
  }
  std::vector<NeighborList> out;
  out.reserve(queries.rows());
  for (std::size_t q = 0; q < queries.rows(); ++q) {
    const std::size_t self = self_index.empty() ? no_self : self_index[q];
    out.push_back(detail::nearest(points, queries.row(q), static_cast<std::size_t>(k), q,
                                  [self](std::size_t i) { return i != self; }));
  }
  return out;
}

}  // namespace csmoute

#endif  // CSMOUTE_NEIGHBORS_HPP
