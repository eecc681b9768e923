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

#include <array>
#include <map>
#include <vector>

#include "csmoute/matrix.hpp"
#include "csmoute/rng.hpp"

namespace csmoute {
namespace {

// Reference values from an independent transcription of xoshiro256** with
// splitmix64 seeding.
TEST(Rng, MatchesReferenceStream) {
  Rng a(42);
  EXPECT_EQ(a.next(), 0x15780b2e0c2ec716ULL);
  EXPECT_EQ(a.next(), 0x6104d9866d113a7eULL);
  EXPECT_EQ(a.next(), 0xae17533239e499a1ULL);
  EXPECT_EQ(a.next(), 0xecb8ad4703b360a1ULL);
  Rng b(0);
  EXPECT_EQ(b.next(), 0x99ec5f36cb75f2b4ULL);
  EXPECT_EQ(b.next(), 0xbf6e1f784956452aULL);
}

TEST(Rng, Fnv1aReferenceValues) {
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
  EXPECT_EQ(fnv1a64("smote"), 0x267c4472af42eff9ULL);
}

TEST(Rng, DerivedStreamsDiffer) {
  EXPECT_NE(derive_seed(1, "smote"), derive_seed(1, "smute"));
  EXPECT_NE(derive_seed(1, std::uint64_t{0}), derive_seed(1, std::uint64_t{1}));
  EXPECT_NE(derive_seed(1, "x"), derive_seed(2, "x"));
  EXPECT_EQ(derive_seed(9, "x"), derive_seed(9, "x"));
}

TEST(Rng, UnitInHalfOpenInterval) {
  Rng g(3);
  for (int i = 0; i < 100000; ++i) {
    const double u = g.unit();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(Rng, IndexIsUniform) {
  // Chi-square goodness of fit, 6 cells, 5 dof; 20.5 is the 0.999 quantile.
  Rng g(11);
  std::array<int, 6> counts{};
  const int n = 60000;
  for (int i = 0; i < n; ++i) {
    const auto k = g.index(6);
    ASSERT_LT(k, 6u);
    ++counts[k];
  }
  double chi = 0.0;
  for (int c : counts) chi += (c - n / 6.0) * (c - n / 6.0) / (n / 6.0);
  EXPECT_LT(chi, 20.5);
}

TEST(Rng, ShuffleIsPermutationAndUniform) {
  Rng g(5);
  std::map<std::vector<int>, int> seen;
  for (int t = 0; t < 24000; ++t) {
    std::vector<int> v{0, 1, 2, 3};
    shuffle(std::span<int>(v), g);
    ++seen[v];
  }
  ASSERT_EQ(seen.size(), 24u);
  for (const auto& [perm, count] : seen) {
    EXPECT_GT(count, 800);
    EXPECT_LT(count, 1200);
  }
}

TEST(Matrix, RowOperations) {
  Matrix m{{1, 2}, {3, 4}, {5, 6}};
  EXPECT_EQ(m.rows(), 3u);
  EXPECT_EQ(m.cols(), 2u);
  m.erase_row(1);
  EXPECT_EQ(m(1, 0), 5);
  const std::vector<double> extra{7, 8};
  m.append_row(extra);
  EXPECT_EQ(m.rows(), 3u);
  EXPECT_EQ(m(2, 1), 8);
  const std::vector<std::size_t> pick{2, 0};
  const Matrix s = m.select_rows(pick);
  EXPECT_EQ(s(0, 0), 7);
  EXPECT_EQ(s(1, 1), 2);
  EXPECT_TRUE(bit_identical(m, Matrix{{1, 2}, {5, 6}, {7, 8}}));
  EXPECT_FALSE(bit_identical(m, s));
}

}  // namespace
}  // namespace csmoute
