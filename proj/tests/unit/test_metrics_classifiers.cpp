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
#include <vector>

#include "csmoute/classifiers.hpp"
#include "csmoute/metrics.hpp"
#include "support/support.hpp"

namespace csmoute {
namespace {

constexpr auto m = ClassLabel::minority;
constexpr auto M = ClassLabel::majority;

double oracle_auc(const std::vector<double>& s, const std::vector<ClassLabel>& y) {
  double good = 0.0;
  double pairs = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (y[i] != m) continue;
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (y[j] != M) continue;
      pairs += 1.0;
      good += s[i] > s[j] ? 1.0 : s[i] == s[j] ? 0.5 : 0.0;
    }
  }
  return good / pairs;
}

double oracle_f(double tp, double fp, double fn) {
  if (tp == 0.0) return fp == 0.0 && fn == 0.0 ? 1.0 : 0.0;
  return 2.0 * tp / (2.0 * tp + fp + fn);
}

TEST(Confusion, HandCount) {
  const std::vector<ClassLabel> t{m, m, M, M, M};
  const std::vector<ClassLabel> p{m, M, m, M, M};
  EXPECT_EQ(confusion(t, p), (Confusion{1, 1, 2, 1}));
  const auto all = confusion(t, t);
  EXPECT_EQ(all.fp + all.fn, 0u);
  std::vector<ClassLabel> inv;
  for (auto l : t) inv.push_back(l == m ? M : m);
  const auto bad = confusion(t, inv);
  EXPECT_EQ(bad.tp + bad.tn, 0u);
}

TEST(FMeasure, Examples) {
  EXPECT_NEAR(f_measure(5, 10, 5), 0.4, 1e-15);
  EXPECT_EQ(f_measure(0, 3, 2), 0.0);
  EXPECT_EQ(f_measure(7, 0, 0), 1.0);
}

TEST(GMean, Examples) {
  EXPECT_NEAR(g_mean(5, 5, 9, 1, ignore_warnings()), 0.67082, 5e-6);
  EXPECT_EQ(g_mean(0, 4, 3, 3, ignore_warnings()), 0.0);
  EXPECT_EQ(g_mean(4, 0, 6, 0, ignore_warnings()), 1.0);
  int warned = 0;
  EXPECT_EQ(g_mean(0, 0, 6, 0, [&](std::string_view) { ++warned; }), 1.0);
  EXPECT_EQ(warned, 1);
}

TEST(Auc, Examples) {
  EXPECT_EQ(*auc(std::vector<double>{0.9, 0.8, 0.1, 0.2}, std::vector<ClassLabel>{m, m, M, M}), 1.0);
  EXPECT_EQ(*auc(std::vector<double>{0.3, 0.3, 0.3, 0.3}, std::vector<ClassLabel>{m, M, m, M}), 0.5);
  EXPECT_EQ(*auc(std::vector<double>{0.7, 0.6, 0.8}, std::vector<ClassLabel>{m, M, M}), 0.5);
  EXPECT_FALSE(auc(std::vector<double>{0.1, 0.2}, std::vector<ClassLabel>{M, M}).has_value());
}

TEST(Metrics, AgreeWithBruteForce) {
  Rng rng(21);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 2 + rng.index(60);
    std::vector<double> s(n);
    std::vector<ClassLabel> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = static_cast<double>(rng.index(trial % 2 ? 5 : 1000)) / 4.0;
      y[i] = rng.index(3) == 0 ? m : M;
    }
    y[0] = m;
    y[1] = M;
    const double thr = static_cast<double>(rng.index(5)) / 4.0;
    const auto rep = score_predictions(s, y, thr, ignore_warnings());
    double tp = 0, fp = 0, tn = 0, fn = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const bool hit = s[i] >= thr;
      if (y[i] == m) (hit ? tp : fn) += 1;
      else (hit ? fp : tn) += 1;
    }
    ASSERT_NEAR(rep.f_measure, oracle_f(tp, fp, fn), 1e-12);
    ASSERT_NEAR(rep.g_mean, std::sqrt(tp / (tp + fn) * tn / (tn + fp)), 1e-12);
    ASSERT_NEAR(*rep.auc, oracle_auc(s, y), 1e-12);
  }
}

TEST(Auc, InvariantUnderMonotoneTransform) {
  Rng rng(22);
  std::vector<double> s(50);
  std::vector<ClassLabel> y(50);
  for (std::size_t i = 0; i < 50; ++i) {
    s[i] = rng.unit();
    y[i] = i % 4 == 0 ? m : M;
  }
  std::vector<double> t;
  for (double v : s) t.push_back(std::exp(3.0 * v) - 7.0);
  EXPECT_EQ(*auc(s, y), *auc(t, y));
}

TEST(Logistic, ZeroIterationsScoresHalf) {
  LogisticParams p;
  p.iterations = 0;
  const auto model = train_logistic(Matrix{{1.0}, {-1.0}}, std::vector<ClassLabel>{m, M}, p);
  for (double s : model.scores(Matrix{{3.0}, {-2.0}, {0.0}})) EXPECT_EQ(s, 0.5);
}

TEST(Logistic, SeparatesTwoPoints) {
  LogisticParams p;
  p.l2 = 0.0;
  const Matrix x{{-1.0}, {1.0}};
  const std::vector<ClassLabel> y{M, m};
  const auto s = train_logistic(x, y, p).scores(x);
  EXPECT_LT(s[0], 0.5);
  EXPECT_GT(s[1], 0.5);
}

TEST(Logistic, DuplicatedDataGivesSameModel) {
  Rng rng(23);
  const auto ds = testing::two_blobs(40, 15, 3, rng);
  Matrix x2 = ds.features;
  x2.append_rows(ds.features);
  std::vector<ClassLabel> y2 = ds.labels;
  y2.insert(y2.end(), ds.labels.begin(), ds.labels.end());
  const auto a = train_logistic(ds.features, ds.labels);
  const auto b = train_logistic(x2, y2);
  for (std::size_t j = 0; j < a.weights.size(); ++j) EXPECT_NEAR(a.weights[j], b.weights[j], 1e-9);
  EXPECT_NEAR(a.bias, b.bias, 1e-9);
}

TEST(Logistic, RejectsSingleClass) {
  EXPECT_THROW(train_logistic(Matrix{{1.0}, {2.0}}, std::vector<ClassLabel>{M, M}), ArgumentError);
}

TEST(Sigmoid, StableAtExtremes) {
  EXPECT_EQ(sigmoid(0.0), 0.5);
  EXPECT_EQ(sigmoid(1000.0), 1.0);
  EXPECT_EQ(sigmoid(-1000.0), 0.0);
  EXPECT_NEAR(sigmoid(2.0) + sigmoid(-2.0), 1.0, 1e-15);
}

TEST(KnnClassifier, ScoresAreNeighborShares) {
  const Matrix x{{0.0}, {1.0}, {2.0}, {10.0}, {11.0}};
  const std::vector<ClassLabel> y{m, m, M, M, M};
  const auto s = train_knn(x, y, 3).scores(Matrix{{0.4}, {10.5}});
  EXPECT_DOUBLE_EQ(s[0], 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(s[1], 0.0);
  EXPECT_THROW(train_knn(x, y, 0), ArgumentError);
}

TEST(KnnClassifier, OneNearestMemorizes) {
  Rng rng(24);
  const auto ds = testing::two_blobs(30, 10, 2, rng, 0.5);
  ClassifierSpec spec;
  spec.kind = ClassifierKind::knn;
  spec.k = 1;
  const auto s = fit_predict(spec, ds.features, ds.labels, ds.features);
  for (std::size_t i = 0; i < s.size(); ++i) EXPECT_EQ(s[i], ds.labels[i] == m ? 1.0 : 0.0);
}

}  // namespace
}  // namespace csmoute
