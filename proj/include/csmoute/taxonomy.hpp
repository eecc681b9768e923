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

#ifndef CSMOUTE_TAXONOMY_HPP
#define CSMOUTE_TAXONOMY_HPP

#include <array>
#include <cstddef>
#include <string_view>
#include <vector>

#include "csmoute/dataset.hpp"
#include "csmoute/error.hpp"
#include "csmoute/neighbors.hpp"

namespace csmoute {

enum class MinorityType { safe, borderline, rare, outlier };

inline constexpr std::array<MinorityType, 4> all_minority_types{MinorityType::safe, MinorityType::borderline,
                                                               MinorityType::rare, MinorityType::outlier};

inline constexpr std::string_view to_string(MinorityType t) {
  switch (t) {
    case MinorityType::safe: return "safe";
    case MinorityType::borderline: return "borderline";
    case MinorityType::rare: return "rare";
    case MinorityType::outlier: return "outlier";
  }
  return "?";
}

/// 5 or 4 same-class neighbors: safe; 3 or 2: borderline; 1: rare; 0: outlier.
inline constexpr MinorityType classify_same_class_count(std::size_t same) {
  if (same >= 4) return MinorityType::safe;
  if (same >= 2) return MinorityType::borderline;
  if (same == 1) return MinorityType::rare;
  return MinorityType::outlier;
}

struct MinorityInstance {
  std::size_t row = 0;
  MinorityType type = MinorityType::safe;
  std::size_t same_class = 0;
};

struct MinorityTypeReport {
  std::vector<MinorityInstance> per_instance;
  std::array<std::size_t, 4> counts{};
  std::array<double, 4> proportions{};  // safe, borderline, rare, outlier

  double proportion(MinorityType t) const { return proportions[static_cast<std::size_t>(t)]; }
  std::size_t count(MinorityType t) const { return counts[static_cast<std::size_t>(t)]; }
};

inline constexpr long long taxonomy_neighborhood = 5;

/// Types every minority row by the classes of its 5 nearest rows in the
/// whole dataset. Expects encoded, standardized features.
inline MinorityTypeReport categorize(const LabeledDataset& ds) {
  if (ds.rows() < 6) {
    throw ArgumentError("categorize: dataset '" + ds.name + "' has " + std::to_string(ds.rows()) +
                        " rows, at least 6 are needed");
  }
  MinorityTypeReport report;
  for (std::size_t i = 0; i < ds.rows(); ++i) {
    if (ds.labels[i] != ClassLabel::minority) continue;
    const auto nb = knn(ds.features, i, taxonomy_neighborhood);
    std::size_t same = 0;
    for (auto j : nb.indices) same += ds.labels[j] == ClassLabel::minority ? 1 : 0;
    const auto type = classify_same_class_count(same);
    report.per_instance.push_back({i, type, same});
    ++report.counts[static_cast<std::size_t>(type)];
  }
  const auto total = static_cast<double>(report.per_instance.size());
  for (std::size_t t = 0; t < 4; ++t) report.proportions[t] = static_cast<double>(report.counts[t]) / total;
  return report;
}

}  // namespace csmoute

#endif  // CSMOUTE_TAXONOMY_HPP
