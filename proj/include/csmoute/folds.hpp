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

#ifndef CSMOUTE_FOLDS_HPP
#define CSMOUTE_FOLDS_HPP

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "csmoute/dataset.hpp"
#include "csmoute/error.hpp"
#include "csmoute/rng.hpp"

namespace csmoute {

struct Split {
  std::vector<std::size_t> train;  // ascending row ids
  std::vector<std::size_t> test;   // ascending row ids
};

/// Repeated stratified two-fold cross-validation. Each repetition cuts the
/// rows into two halves; fold f trains on half 1-f and tests on half f.
struct FoldPlan {
  std::uint64_t seed = 0;
  std::vector<std::array<std::vector<std::size_t>, 2>> halves;

  std::size_t repetitions() const noexcept { return halves.size(); }
  std::size_t size() const noexcept { return 2 * halves.size(); }

  Split split(std::size_t repetition, std::size_t fold) const {
    const auto& h = halves.at(repetition);
    return Split{h[1 - fold], h[fold]};
  }
};

/// Shuffles each class independently and deals the first floor(m/2)
/// minority rows and the first ceil(M/2) majority rows to half 0, so odd
/// class sizes offset each other and the halves stay near equal size.
inline FoldPlan make_fold_plan(const LabeledDataset& ds, std::uint64_t seed, std::size_t repetitions = 5) {
  auto minority = ds.rows_of(ClassLabel::minority);
  auto majority = ds.rows_of(ClassLabel::majority);
  if (minority.size() < 2) {
    throw ArgumentError("fold plan: dataset '" + ds.name + "' needs at least 2 minority rows");
  }
  if (majority.size() < 2) {
    throw ArgumentError("fold plan: dataset '" + ds.name + "' needs at least 2 majority rows");
  }
  FoldPlan plan;
  plan.seed = seed;
  Rng rng = Rng::derive(seed, "folds");
  for (std::size_t rep = 0; rep < repetitions; ++rep) {
    std::array<std::vector<std::size_t>, 2> h;
    auto deal = [&](std::vector<std::size_t>& ids, std::size_t first) {
      shuffle(std::span<std::size_t>(ids), rng);
      h[0].insert(h[0].end(), ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(first));
      h[1].insert(h[1].end(), ids.begin() + static_cast<std::ptrdiff_t>(first), ids.end());
    };
    deal(minority, minority.size() / 2);
    deal(majority, (majority.size() + 1) / 2);
    std::sort(h[0].begin(), h[0].end());
    std::sort(h[1].begin(), h[1].end());
    plan.halves.push_back(std::move(h));
  }
  return plan;
}

}  // namespace csmoute

#endif  // CSMOUTE_FOLDS_HPP
