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

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "csmoute/io.hpp"
#include "csmoute/preprocess.hpp"
#include "csmoute/taxonomy.hpp"
#include "support/support.hpp"

namespace csmoute {
namespace {

TEST(Taxonomy, CountMapping) {
  EXPECT_EQ(classify_same_class_count(5), MinorityType::safe);
  EXPECT_EQ(classify_same_class_count(4), MinorityType::safe);
  EXPECT_EQ(classify_same_class_count(3), MinorityType::borderline);
  EXPECT_EQ(classify_same_class_count(2), MinorityType::borderline);
  EXPECT_EQ(classify_same_class_count(1), MinorityType::rare);
  EXPECT_EQ(classify_same_class_count(0), MinorityType::outlier);
}

TEST(Taxonomy, IsolatedMinorityIsOutlier) {
  // Row 0 is a minority point among majority rows 1..5; rows 6..11 form a
  // minority cluster; rows 12..17 are far-away majority padding.
  Matrix x(18, 2);
  const double ring[5][2] = {{0.1, 0}, {0, 0.1}, {-0.1, 0}, {0, -0.1}, {0.1, 0.1}};
  for (std::size_t i = 0; i < 5; ++i) {
    x(1 + i, 0) = ring[i][0];
    x(1 + i, 1) = ring[i][1];
  }
  for (std::size_t i = 0; i < 6; ++i) {
    x(6 + i, 0) = 50.0 + 0.1 * static_cast<double>(i);
    x(6 + i, 1) = 50.0;
    x(12 + i, 0) = -50.0 - 0.1 * static_cast<double>(i);
    x(12 + i, 1) = -50.0;
  }
  std::vector<ClassLabel> y(18, ClassLabel::majority);
  y[0] = ClassLabel::minority;
  for (std::size_t i = 6; i < 12; ++i) y[i] = ClassLabel::minority;
  const auto rep = categorize(make_dataset("t", x, y));
  ASSERT_EQ(rep.per_instance.size(), 7u);
  EXPECT_EQ(rep.per_instance[0].row, 0u);
  EXPECT_EQ(rep.per_instance[0].type, MinorityType::outlier);
  EXPECT_EQ(rep.per_instance[0].same_class, 0u);
  for (std::size_t i = 1; i < 7; ++i) {
    EXPECT_EQ(rep.per_instance[i].type, MinorityType::safe);
    EXPECT_EQ(rep.per_instance[i].same_class, 5u);
  }
  EXPECT_EQ(rep.count(MinorityType::outlier), 1u);
  EXPECT_EQ(rep.count(MinorityType::safe), 6u);
}

TEST(Taxonomy, TooFewRows) {
  const auto ds = make_dataset("t", Matrix{{0}, {1}, {2}, {3}, {4}},
                               {ClassLabel::minority, ClassLabel::minority, ClassLabel::majority,
                                ClassLabel::majority, ClassLabel::majority});
  EXPECT_THROW(categorize(ds), ArgumentError);
}

TEST(Taxonomy, ProportionsSumToOne) {
  Rng rng(3);
  const auto ds = testing::two_blobs(80, 30, 3, rng, 1.0);
  const auto rep = categorize(ds);
  EXPECT_EQ(std::accumulate(rep.counts.begin(), rep.counts.end(), std::size_t{0}), 30u);
  EXPECT_NEAR(std::accumulate(rep.proportions.begin(), rep.proportions.end(), 0.0), 1.0, 1e-12);
}

TEST(Taxonomy, RowOrderDoesNotMatterWithoutTies) {
  Rng rng(4);
  const auto ds = testing::two_blobs(60, 20, 2, rng, 1.0);
  std::vector<std::size_t> perm(ds.rows());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  shuffle(std::span<std::size_t>(perm), rng);
  std::vector<ClassLabel> y;
  for (auto i : perm) y.push_back(ds.labels[i]);
  const auto shuffled = make_dataset("p", ds.features.select_rows(perm), y);
  EXPECT_EQ(categorize(ds).counts, categorize(shuffled).counts);
}

TEST(Taxonomy, SeparatingClassesMakesEverythingSafe) {
  Rng rng(5);
  const auto ds = testing::two_blobs(60, 20, 2, rng, 100.0);
  EXPECT_EQ(categorize(ds).count(MinorityType::safe), 20u);
}

TEST(Taxonomy, Glass1WithinOneInstance) {
  const auto ds = prepare(load_dataset(testing::keel_file("glass1"), {}, ignore_warnings()), ignore_warnings());
  const auto rep = categorize(ds);
  const double m = static_cast<double>(ds.count(ClassLabel::minority));
  const double table[4] = {47.37, 28.95, 17.11, 6.58};
  for (std::size_t t = 0; t < 4; ++t) EXPECT_LE(std::fabs(100.0 * rep.proportions[t] - table[t]), 100.0 / m + 0.01);
}

}  // namespace
}  // namespace csmoute
