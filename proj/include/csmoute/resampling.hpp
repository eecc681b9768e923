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

#ifndef CSMOUTE_RESAMPLING_HPP
#define CSMOUTE_RESAMPLING_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "csmoute/error.hpp"
#include "csmoute/matrix.hpp"
#include "csmoute/neighbors.hpp"
#include "csmoute/rng.hpp"

/**
 * @file resampling.hpp
 *
 * @brief Interpolation-based over- and undersampling.
 *
 * SMOTE grows the minority class with points x1 + r (x2 - x1), where x1 is a
 * random minority row, x2 one of its k nearest minority neighbors and r is
 * uniform on [0, 1). SMUTE applies the same interpolation to the majority
 * class but replaces the pair (x1, x2) by the new point, removing one row per
 * step. CSMOUTE splits the class gap n = |majority| - |minority| between the
 * two: round(n * ratio) SMOTE steps and the remainder as SMUTE steps, which
 * leaves both classes the same size.
 *
 * Every draw goes through a UniformSource, in a fixed order per step:
 * x1 index, x2 position in the neighbor list, r.
 */

namespace csmoute {

/// Parameters of one CSMOUTE run.
struct ResampleConfig {
  long long k_smote = 5;
  long long k_smute = 5;
  double ratio = 0.5;  // share of the class gap closed by oversampling
  std::uint64_t seed = 0;
  bool smute_originals_only = false;

  void validate() const {
    if (k_smote < 1 || k_smute < 1) throw ArgumentError("k_smote and k_smute must be at least 1");
    if (!(ratio >= 0.0 && ratio <= 1.0)) throw ArgumentError("ratio must lie in [0, 1]");
  }
};

/// One interpolated row: parent_a + r * (parent_b - parent_a). Ids are
/// positions in the input for original rows; synthetic rows are numbered
/// after the inputs in creation order.
struct Synthetic {
  std::size_t id = 0;
  std::size_t parent_a = 0;
  std::size_t parent_b = 0;
  double r = 0.0;
};

struct OversampleResult {
  Matrix rows;                     // inputs verbatim, then synthetics; row i has id i
  std::vector<Synthetic> lineage;  // one entry per appended row
};

struct UndersampleResult {
  Matrix rows;                     // surviving rows
  std::vector<std::size_t> ids;    // id of each surviving row
  std::vector<Synthetic> lineage;  // every synthetic created, in creation order
  Matrix synthetics;               // coordinates of lineage[j], including later-merged ones
  std::vector<std::size_t> removed;  // ids deleted, two per step, in deletion order
};

struct ResampleResult {
  Matrix majority_out;
  std::vector<std::size_t> majority_ids;
  Matrix minority_out;
  std::vector<Synthetic> minority_lineage;
  std::vector<Synthetic> majority_lineage;
  Matrix majority_synthetics;
  std::vector<std::size_t> removed;
  std::size_t n_smote = 0;
  std::size_t n_smute = 0;
};

namespace detail {

inline void interpolate(std::span<const double> a, std::span<const double> b, double r, std::vector<double>& out) {
  out.resize(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + r * (b[i] - a[i]);
}

}  // namespace detail

/// Appends `n` SMOTE points to a copy of `minority`. Neighbors are searched
/// among the original minority rows only.
template <UniformSource G>
OversampleResult smote(const Matrix& minority, long long k, long long n, G& rng) {
  if (k < 1) throw ArgumentError("smote: k must be at least 1");
  if (n < 0) throw ArgumentError("smote: n must be non-negative");
  OversampleResult out{minority, {}};
  if (n == 0) return out;
  const std::size_t m = minority.rows();
  if (m < 2) {
    throw DegenerateClassError("smote: need at least 2 minority rows to interpolate, have " + std::to_string(m));
  }

  std::vector<std::optional<NeighborList>> neighbors(m);
  std::vector<double> point;
  out.rows.reserve_rows(m + static_cast<std::size_t>(n));
  out.lineage.reserve(static_cast<std::size_t>(n));
  for (long long step = 0; step < n; ++step) {
    const std::size_t x1 = rng.index(m);
    if (!neighbors[x1]) neighbors[x1] = knn(minority, x1, k);
    const auto& nb = neighbors[x1]->indices;
    const std::size_t x2 = nb[rng.index(nb.size())];
    const double r = rng.unit();
    detail::interpolate(minority.row(x1), minority.row(x2), r, point);
    out.rows.append_row(point);
    out.lineage.push_back({m + static_cast<std::size_t>(step), x1, x2, r});
  }
  return out;
}

/// Runs `n` SMUTE steps on a copy of `majority`. Each step draws x1 from the
/// current set (synthetics included), x2 from the k nearest neighbors of x1
/// in the current set, deletes both and appends their interpolation, so the
/// output has |majority| - n rows. With `originals_only`, x2 is restricted
/// to rows of the input that have not been merged yet.
template <UniformSource G>
UndersampleResult smute(const Matrix& majority, long long k, long long n, G& rng, bool originals_only = false) {
  if (k < 1) throw ArgumentError("smute: k must be at least 1");
  if (n < 0) throw ArgumentError("smute: n must be non-negative");
  const std::size_t m = majority.rows();
  UndersampleResult out;
  out.rows = majority;
  out.ids.resize(m);
  std::iota(out.ids.begin(), out.ids.end(), std::size_t{0});
  out.synthetics = Matrix(0, majority.cols());
  if (n == 0) return out;
  if (m < 2 || static_cast<long long>(m) - n < 2) {
    throw InfeasibleError("smute: cannot remove " + std::to_string(n) + " of " + std::to_string(m) +
                          " majority rows (at least 2 must remain)");
  }

  std::vector<double> point;
  std::size_t next_id = m;
  out.lineage.reserve(static_cast<std::size_t>(n));
  out.removed.reserve(2 * static_cast<std::size_t>(n));
  for (long long step = 0; step < n; ++step) {
    Matrix& work = out.rows;
    const std::size_t p1 = rng.index(work.rows());
    const NeighborList nb =
        originals_only ? knn_where(work, p1, k, [&](std::size_t i) { return out.ids[i] < m; }) : knn(work, p1, k);
    if (nb.indices.empty()) {
      throw InfeasibleError("smute: no original neighbor left for step " + std::to_string(step));
    }
    const std::size_t p2 = nb.indices[rng.index(nb.size())];
    const double r = rng.unit();
    detail::interpolate(work.row(p1), work.row(p2), r, point);

    const std::size_t id1 = out.ids[p1];
    const std::size_t id2 = out.ids[p2];
    out.lineage.push_back({next_id, id1, id2, r});
    out.synthetics.append_row(point);
    out.removed.push_back(id1);
    out.removed.push_back(id2);

    const std::size_t hi = std::max(p1, p2);
    const std::size_t lo = std::min(p1, p2);
    work.erase_row(hi);
    work.erase_row(lo);
    out.ids.erase(out.ids.begin() + static_cast<std::ptrdiff_t>(hi));
    out.ids.erase(out.ids.begin() + static_cast<std::ptrdiff_t>(lo));
    work.append_row(point);
    out.ids.push_back(next_id++);
  }
  return out;
}

/// round(n * ratio), halves rounded away from zero.
inline std::size_t smote_share(std::size_t gap, double ratio) {
  return static_cast<std::size_t>(std::round(static_cast<double>(gap) * ratio));
}

/// Throws if csmoute() would reject these class sizes.
inline void check_csmoute_feasible(std::size_t n_majority, std::size_t n_minority, const ResampleConfig& config) {
  config.validate();
  if (n_majority < n_minority) throw ArgumentError("csmoute: majority class is smaller than minority class");
  const std::size_t gap = n_majority - n_minority;
  const std::size_t n_smote = smote_share(gap, config.ratio);
  const std::size_t n_smute = gap - n_smote;
  if (n_smote > 0 && n_minority < 2) {
    throw DegenerateClassError("csmoute: SMOTE share " + std::to_string(n_smote) + " needs at least 2 minority rows");
  }
  if (n_smute > 0 && n_majority - n_smute < 2) {
    throw InfeasibleError("csmoute: SMUTE share " + std::to_string(n_smute) + " would leave fewer than 2 majority rows");
  }
}

/// Balances the two classes. SMOTE and SMUTE draw from independent streams
/// derived from (seed, "smote") and (seed, "smute"), so ratio = 1 reproduces
/// smote() and ratio = 0 reproduces smute() under the same seed.
inline ResampleResult csmoute(const Matrix& majority, const Matrix& minority, const ResampleConfig& config) {
  check_csmoute_feasible(majority.rows(), minority.rows(), config);
  if (!majority.empty() && !minority.empty() && majority.cols() != minority.cols()) {
    throw ArgumentError("csmoute: class matrices differ in width");
  }
  const std::size_t gap = majority.rows() - minority.rows();

  ResampleResult res;
  res.n_smote = smote_share(gap, config.ratio);
  res.n_smute = gap - res.n_smote;

  Rng smote_rng = Rng::derive(config.seed, "smote");
  auto over = smote(minority, config.k_smote, static_cast<long long>(res.n_smote), smote_rng);
  res.minority_out = std::move(over.rows);
  res.minority_lineage = std::move(over.lineage);

  Rng smute_rng = Rng::derive(config.seed, "smute");
  auto under = smute(majority, config.k_smute, static_cast<long long>(res.n_smute), smute_rng,
                     config.smute_originals_only);
  res.majority_out = std::move(under.rows);
  res.majority_ids = std::move(under.ids);
  res.majority_lineage = std::move(under.lineage);
  res.majority_synthetics = std::move(under.synthetics);
  res.removed = std::move(under.removed);
  return res;
}

/// Indices of the rows kept by random undersampling, ascending.
template <UniformSource G>
std::vector<std::size_t> rus_keep(std::size_t rows, long long n, G& rng) {
  if (n < 0 || (n > 0 && static_cast<long long>(rows) - n < 1)) {
    throw InfeasibleError("rus: cannot remove " + std::to_string(n) + " of " + std::to_string(rows) + " rows");
  }
  std::vector<std::size_t> idx(rows);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  const auto drop = static_cast<std::size_t>(n);
  for (std::size_t i = 0; i < drop; ++i) {
    const std::size_t j = i + rng.index(rows - i);
    std::swap(idx[i], idx[j]);
  }
  std::vector<std::size_t> keep(idx.begin() + static_cast<std::ptrdiff_t>(drop), idx.end());
  std::sort(keep.begin(), keep.end());
  return keep;
}

/// Removes `n` rows chosen uniformly without replacement; survivors keep
/// their relative order.
template <UniformSource G>
Matrix rus(const Matrix& majority, long long n, G& rng) {
  return majority.select_rows(rus_keep(majority.rows(), n, rng));
}

/// Source rows of `n` uniform draws with replacement.
template <UniformSource G>
std::vector<std::size_t> ros_sources(std::size_t rows, long long n, G& rng) {
  if (n < 0) throw ArgumentError("ros: n must be non-negative");
  if (rows == 0) throw DegenerateClassError("ros: empty minority class");
  std::vector<std::size_t> out(static_cast<std::size_t>(n));
  for (auto& i : out) i = rng.index(rows);
  return out;
}

/// Appends `n` uniformly drawn copies of existing rows.
template <UniformSource G>
Matrix ros(const Matrix& minority, long long n, G& rng) {
  const auto sources = ros_sources(minority.rows(), n, rng);
  Matrix out = minority;
  out.reserve_rows(minority.rows() + sources.size());
  for (auto i : sources) out.append_row(minority.row(i));
  return out;
}

}  // namespace csmoute

#endif  // CSMOUTE_RESAMPLING_HPP
