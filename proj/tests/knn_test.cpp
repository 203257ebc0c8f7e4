/*
 * Copyright 2026 The balsplit Authors.
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

#include <set>

#include "balsplit/dataset.hpp"
#include "balsplit/knn.hpp"
#include "balsplit/report.hpp"
#include "balsplit/rng.hpp"
#include "gtest/gtest.h"
#include "oracles.hpp"

namespace balsplit {
namespace {

FeatureMatrix matrix(const std::vector<std::vector<double>>& rows) {
  std::vector<double> values;
  for (const auto& r : rows) values.insert(values.end(), r.begin(), r.end());
  return FeatureMatrix(rows.size(), rows.empty() ? 0 : rows[0].size(), std::move(values));
}

TEST(KnnFitTest, ValidatesInputs) {
  std::vector<std::vector<double>> ten;
  std::vector<Label> labels;
  for (int i = 0; i < 10; ++i) {
    ten.push_back({double(i)});
    labels.push_back(i % 2);
  }
  EXPECT_NO_THROW(knn_fit(matrix(ten), labels, 5));
  EXPECT_THROW(knn_fit(matrix({{0}, {1}, {2}}), {0, 1, 0}, 5), InvalidArgument);
  EXPECT_THROW(knn_fit(FeatureMatrix(), {}, 1), InvalidArgument);
  EXPECT_THROW(knn_fit(matrix({{0}, {1}}), {0, 1}, 0), InvalidArgument);
  EXPECT_THROW(knn_fit(matrix({{0}, {1}}), {0}, 1), InvalidArgument);
}

TEST(KnnPredictTest, NearestPointWins) {
  const auto model = knn_fit(matrix({{0, 0}, {5, 5}}), {0, 1}, 1);
  EXPECT_EQ(knn_predict(model, matrix({{5, 5}})), (std::vector<Label>{1}));
  // Class 1 at distance 1, class 0 at distance 2.
  const auto m2 = knn_fit(matrix({{2, 0}, {1, 0}}), {0, 1}, 1);
  EXPECT_EQ(knn_predict(m2, matrix({{0, 0}})), (std::vector<Label>{1}));
}

TEST(KnnPredictTest, MajorityOfThreeOnFivePoints) {
  const std::vector<std::vector<double>> points = {{0, 0}, {1, 0}, {0, 2}, {3, 3}, {-4, 0}};
  const std::vector<Label> labels = {0, 0, 1, 1, 1};
  const std::vector<double> query = {0.2, 0.1};
  // Neighbours by hand: (0,0) a, (1,0) a, (0,2) b.
  const Label expected = oracle::brute_knn(points, labels, query, 3);
  ASSERT_EQ(expected, 0u);
  const auto model = knn_fit(matrix(points), labels, 3);
  EXPECT_EQ(knn_predict(model, matrix({query})), (std::vector<Label>{expected}));
}

TEST(KnnPredictTest, TieBreaks) {
  // Equal distances: lower training index is the nearer neighbour.
  const auto m1 = knn_fit(matrix({{1}, {-1}}), {1, 0}, 1);
  EXPECT_EQ(knn_predict(m1, matrix({{0}})), (std::vector<Label>{1}));
  // 1-1 vote: class whose nearest member ranks first wins.
  const auto m2 = knn_fit(matrix({{3}, {1}}), {0, 1}, 2);
  EXPECT_EQ(knn_predict(m2, matrix({{0}})), (std::vector<Label>{1}));
}

TEST(KnnPredictTest, DimensionMismatch) {
  const auto model = knn_fit(matrix({{0, 0}, {1, 1}}), {0, 1}, 1);
  EXPECT_THROW(knn_predict(model, matrix({{0, 0, 0}})), InvalidArgument);
}

TEST(KnnPredictTest, MatchesBruteForceOracle) {
  Rng rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 5 + rng.uniform_index(40);
    const std::size_t dim = 1 + rng.uniform_index(3);
    const std::size_t k = 1 + rng.uniform_index(std::min<std::size_t>(n, 7));
    std::vector<std::vector<double>> points(n, std::vector<double>(dim));
    std::vector<Label> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
      // Integer grid coordinates produce plenty of distance ties.
      for (auto& v : points[i]) v = static_cast<double>(rng.uniform_index(5));
      labels[i] = static_cast<Label>(rng.uniform_index(3));
    }
    const auto model = knn_fit(matrix(points), labels, k);
    for (int q = 0; q < 10; ++q) {
      std::vector<double> query(dim);
      for (auto& v : query) v = static_cast<double>(rng.uniform_index(5));
      EXPECT_EQ(knn_predict(model, matrix({query}))[0], oracle::brute_knn(points, labels, query, k));
    }
  }
}

TEST(KnnPredictTest, SelfAccuracyWithKOne) {
  const auto ds = synthesize_dataset({{"a", 100}, {"b", 150}, {"c", 80}}, 3, 4);
  const std::vector<Label> labels(ds.labels().begin(), ds.labels().end());
  const auto model = knn_fit(ds.features(), labels, 1);
  EXPECT_EQ(knn_predict(model, ds.features()), labels);
}

TEST(KnnPredictTest, InvariantToTrainingRowOrder) {
  const auto ds = synthesize_dataset({{"a", 60}, {"b", 60}}, 2, 8);
  const std::vector<Label> labels(ds.labels().begin(), ds.labels().end());
  std::vector<std::size_t> order(ds.sample_count());
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(3);
  partial_shuffle(std::span(order), order.size(), rng);
  std::vector<Label> permuted_labels;
  for (const auto i : order) permuted_labels.push_back(labels[i]);
  const auto queries = synthesize_dataset({{"a", 30}, {"b", 30}}, 2, 9).features();
  // Continuous Gaussian features: no exact distance ties.
  EXPECT_EQ(knn_predict(knn_fit(ds.features(), labels, 5), queries),
            knn_predict(knn_fit(ds.features().select_rows(order), permuted_labels, 5), queries));
}

TEST(KnnPredictTest, RefitIsIdempotent) {
  const auto ds = synthesize_dataset({{"a", 40}, {"b", 40}}, 2, 1);
  const std::vector<Label> labels(ds.labels().begin(), ds.labels().end());
  EXPECT_EQ(knn_predict(knn_fit(ds.features(), labels, 3), ds.features()),
            knn_predict(knn_fit(ds.features(), labels, 3), ds.features()));
  EXPECT_EQ(to_json(knn_fit(ds.features(), labels, 3)).at("k"), 3);
}

}  // namespace
}  // namespace balsplit
