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

#include <algorithm>
#include <numeric>
#include <vector>

#include "csmoute/neighbors.hpp"
#include "support/support.hpp"

namespace csmoute {
namespace {

// Full argsort of every row by (squared distance, index).
std::vector<std::size_t> oracle_order(const Matrix& pts, std::span<const double> q, std::size_t skip) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < pts.rows(); ++i) {
    if (i != skip) idx.push_back(i);
  }
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return squared_distance(pts.row(a), q) < squared_distance(pts.row(b), q);
  });
  return idx;
}

TEST(Knn, SimpleLine) {
  const Matrix pts{{0, 0}, {1, 0}, {5, 0}};
  const auto nb = knn(pts, 0, 1);
  EXPECT_EQ(nb.indices, (std::vector<std::size_t>{1}));
  EXPECT_EQ(nb.distances, (std::vector<double>{1.0}));
}

TEST(Knn, TieBrokenByIndex) {
  const Matrix pts{{0, 0}, {1, 0}, {-1, 0}};
  EXPECT_EQ(knn(pts, 0, 1).indices, (std::vector<std::size_t>{1}));
  EXPECT_EQ(knn(pts, 0, 2).indices, (std::vector<std::size_t>{1, 2}));
}

TEST(Knn, Errors) {
  const Matrix pts{{0, 0}, {1, 0}};
  EXPECT_THROW(knn(pts, 0, 0), ArgumentError);
  EXPECT_THROW(knn(pts, 0, -3), ArgumentError);
  EXPECT_THROW(knn(Matrix(0, 2), 0, 1), ArgumentError);
  EXPECT_THROW(knn(pts, 5, 1), ArgumentError);
}

TEST(Knn, MatchesExhaustiveSort) {
  Rng rng(4);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 2 + rng.index(40);
    const Matrix pts = trial % 2 ? testing::random_matrix(n, 3, rng) : testing::lattice_matrix(n, 2, rng);
    const std::size_t q = rng.index(n);
    const long long k = 1 + static_cast<long long>(rng.index(n + 2));
    const auto nb = knn(pts, q, k);
    auto expect = oracle_order(pts, pts.row(q), q);
    expect.resize(std::min<std::size_t>(static_cast<std::size_t>(k), n - 1));
    ASSERT_EQ(nb.indices, expect) << "trial " << trial;
    for (std::size_t i = 1; i < nb.distances.size(); ++i) ASSERT_LE(nb.distances[i - 1], nb.distances[i]);
  }
}

TEST(Knn, NinetyPercentOfTenPoints) {
  Rng rng(10);
  const Matrix pts = testing::random_matrix(10, 2, rng);
  const auto nb = knn(pts, 3, 9);
  EXPECT_EQ(nb.indices, oracle_order(pts, pts.row(3), 3));
}

TEST(Knn, WhereRespectsPredicate) {
  Rng rng(6);
  const Matrix pts = testing::random_matrix(30, 2, rng);
  const auto nb = knn_where(pts, 0, 5, [](std::size_t i) { return i % 2 == 0; });
  ASSERT_EQ(nb.size(), 5u);
  for (auto i : nb.indices) EXPECT_EQ(i % 2, 0u);
  std::vector<std::size_t> expect;
  for (auto i : oracle_order(pts, pts.row(0), 0)) {
    if (i % 2 == 0) expect.push_back(i);
  }
  expect.resize(5);
  EXPECT_EQ(nb.indices, expect);
}

TEST(KnnCross, SelfIndexMatchesKnn) {
  Rng rng(12);
  const Matrix pts = testing::lattice_matrix(25, 2, rng, 3);
  std::vector<std::size_t> self(25);
  std::iota(self.begin(), self.end(), std::size_t{0});
  const auto lists = knn_cross(pts, pts, 4, self);
  for (std::size_t i = 0; i < 25; ++i) EXPECT_EQ(lists[i].indices, knn(pts, i, 4).indices);
}

TEST(KnnCross, SingleQuery) {
  Rng rng(13);
  const Matrix pts = testing::random_matrix(5, 2, rng);
  const Matrix q = testing::random_matrix(1, 2, rng);
  auto expect = oracle_order(pts, q.row(0), no_self);
  expect.resize(3);
  EXPECT_EQ(knn_cross(pts, q, 3)[0].indices, expect);
}

TEST(KnnCross, KClampedToPointCount) {
  Rng rng(14);
  const Matrix pts = testing::random_matrix(5, 2, rng);
  const Matrix q = testing::random_matrix(2, 2, rng);
  for (const auto& nl : knn_cross(pts, q, 50)) EXPECT_EQ(nl.size(), 5u);
}

}  // namespace
}  // namespace csmoute
