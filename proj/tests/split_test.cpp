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

#include <algorithm>
#include <cmath>

#include "balsplit/report.hpp"
#include "balsplit/rng.hpp"
#include "balsplit/split.hpp"
#include "gtest/gtest.h"
#include "oracles.hpp"

namespace balsplit {
namespace {

// Dataset with the given class sizes; features are irrelevant to splitting.
Dataset census_dataset(const std::vector<std::size_t>& counts) {
  std::vector<Label> labels;
  std::vector<std::string> names;
  for (std::size_t c = 0; c < counts.size(); ++c) {
    names.push_back(std::string(1, static_cast<char>('A' + c)));
    labels.insert(labels.end(), counts[c], static_cast<Label>(c));
  }
  // Interleave classes so indices of a class are not contiguous.
  Rng rng(1234);
  partial_shuffle(std::span(labels), labels.size(), rng);
  const std::size_t n = labels.size();
  return Dataset(FeatureMatrix(n, 1), std::move(labels), std::move(names));
}

std::vector<std::size_t> count_labels(const Dataset& ds, const std::vector<std::size_t>& indices) {
  std::vector<std::size_t> counts(ds.class_count(), 0);
  for (const auto i : indices) ++counts[ds.labels()[i]];
  return counts;
}

TEST(UpperLimitTest, WorkedExamples) {
  const auto binary = census_dataset({800, 1000});
  EXPECT_EQ(upper_limit_fraction(binary).reduced().numerator, 8u);
  EXPECT_EQ(upper_limit_fraction(binary).reduced().denominator, 9u);
  EXPECT_NEAR(upper_limit_train_ratio(binary), 8.0 / 9.0, 1e-15);

  EXPECT_DOUBLE_EQ(upper_limit_train_ratio(census_dataset({800, 1000, 600})), 0.75);

  const auto customer = census_dataset({1972, 1858, 1970, 2268});
  EXPECT_EQ(upper_limit_fraction(customer).numerator, 4u * 1858u);
  EXPECT_EQ(upper_limit_fraction(customer).denominator, 8068u);
  EXPECT_NEAR(upper_limit_train_ratio(customer), 0.9212, 5e-5);
}

TEST(FloorFractionTest, SnapsDecimalProducts) {
  EXPECT_EQ(floor_fraction(0.7, 1800), 1260u);
  EXPECT_EQ(floor_fraction(0.6, 900), 540u);
  EXPECT_EQ(floor_fraction(0.3, 10), 3u);
  EXPECT_EQ(floor_fraction(0.9, 8068.0 / 4), 1815u);
  EXPECT_EQ(floor_fraction(0.75, 7), 5u);
}

TEST(PlanSplitTest, BalancedBinaryQuota) {
  const auto ds = census_dataset({800, 1000});
  const auto plan = plan_split(ds, {Strategy::balanced, 0.6, 0});
  const std::size_t quota = oracle::floor_ratio(6, 10, 1800, 2);
  ASSERT_EQ(quota, 540u);
  EXPECT_EQ(plan.per_class_train, (std::vector<std::size_t>{quota, quota}));
  EXPECT_EQ(plan.total_train, 2 * quota);
  const auto result = split(ds, {Strategy::balanced, 0.6, 0});
  EXPECT_EQ(result.per_class_test, (std::vector<std::size_t>{260, 460}));
}

TEST(PlanSplitTest, BalancedAtUpperLimitLeavesMinorityTestEmpty) {
  const auto ds = census_dataset({800, 1000, 600});
  const auto result = split(ds, {Strategy::balanced, 0.75, 3});
  EXPECT_EQ(result.plan.per_class_train, (std::vector<std::size_t>{600, 600, 600}));
  EXPECT_EQ(result.per_class_test[2], 0u);
  ASSERT_EQ(result.warnings.size(), 1u);
  EXPECT_NE(result.warnings[0].find("'C'"), std::string::npos);
}

TEST(PlanSplitTest, BalancedAboveLimitIsInfeasible) {
  const auto ds = census_dataset({800, 1000, 600});
  try {
    plan_split(ds, {Strategy::balanced, 0.9, 0});
    FAIL() << "expected InfeasibleBalancedSplit";
  } catch (const InfeasibleBalancedSplit& e) {
    EXPECT_EQ(e.quota(), 720u);
    EXPECT_EQ(e.minority_count(), 600u);
    EXPECT_DOUBLE_EQ(e.upper_limit(), 0.75);
    EXPECT_NE(std::string(e.what()).find("0.75"), std::string::npos);
  }
  EXPECT_THROW(split(ds, {Strategy::balanced, 0.9, 0}), InfeasibleBalancedSplit);
}

TEST(PlanSplitTest, InvalidRatio) {
  const auto ds = census_dataset({5, 5});
  for (const double tr : {0.0, 1.0, -0.2, 1.5, std::nan("")}) {
    EXPECT_THROW(plan_split(ds, {Strategy::random, tr, 0}), InvalidArgument) << tr;
  }
}

TEST(SplitTest, BalancedBinaryAnySeed) {
  const auto ds = census_dataset({800, 1000});
  for (const std::uint64_t seed : {0ULL, 1ULL, 42ULL, 987654321ULL}) {
    const auto result = split(ds, {Strategy::balanced, 0.7, seed});
    const std::size_t quota = oracle::floor_ratio(7, 10, 1800, 2);
    EXPECT_EQ(count_labels(ds, result.train_indices), (std::vector<std::size_t>{quota, quota}));
  }
}

TEST(SplitTest, BalancedTinyRatioGivesEmptyTrain) {
  const auto ds = census_dataset({3, 4});
  const auto result = split(ds, {Strategy::balanced, 0.01, 0});
  EXPECT_TRUE(result.train_indices.empty());
  EXPECT_EQ(result.test_indices.size(), 7u);
  EXPECT_TRUE(std::isnan(describe(result).train_imbalance_ratio));
}

TEST(SplitTest, StratifiedBinary) {
  const auto ds = census_dataset({800, 1000});
  const auto result = split(ds, {Strategy::stratified, 0.75, 5});
  const std::vector<std::size_t> expected = {oracle::floor_ratio(75, 100, 800), oracle::floor_ratio(75, 100, 1000)};
  ASSERT_EQ(expected, (std::vector<std::size_t>{600, 750}));
  EXPECT_EQ(count_labels(ds, result.train_indices), expected);
  EXPECT_DOUBLE_EQ(describe(result).train_imbalance_ratio, 1.25);
}

TEST(SplitTest, StratifiedLargestRemainderTopUp) {
  // tr = 0.5 over {3, 3, 3}: floors {1, 1, 1}, target 4; all remainders 0.5,
  // so the lowest class id receives the extra sample.
  const auto ds = census_dataset({3, 3, 3});
  const auto plan = plan_split(ds, {Strategy::stratified, 0.5, 0});
  EXPECT_EQ(plan.per_class_train, (std::vector<std::size_t>{2, 1, 1}));
  EXPECT_EQ(plan.total_train, 4u);

  // {5, 3}: 0.5 -> floors {2, 1}, remainders {0.5, 0.5}, target 4.
  const auto plan2 = plan_split(census_dataset({5, 3}), {Strategy::stratified, 0.5, 0});
  EXPECT_EQ(plan2.per_class_train, (std::vector<std::size_t>{3, 1}));

  // {1, 9} at 0.3: floors {0, 2}, remainders {0.3, 0.7}, target 3 -> class 1 first.
  const auto plan3 = plan_split(census_dataset({1, 9}), {Strategy::stratified, 0.3, 0});
  EXPECT_EQ(plan3.per_class_train, (std::vector<std::size_t>{0, 3}));
}

TEST(SplitTest, RandomFillsRealizedCounts) {
  const auto ds = census_dataset({300, 700});
  const auto result = split(ds, {Strategy::random, 0.6, 9});
  EXPECT_EQ(result.train_indices.size(), 600u);
  EXPECT_EQ(result.plan.per_class_train, count_labels(ds, result.train_indices));
  const auto summary = describe(result);
  EXPECT_EQ(summary.train_counts[0] + summary.train_counts[1], result.plan.total_train);
  EXPECT_DOUBLE_EQ(summary.realized_train_ratio, 0.6);
}

TEST(SplitTest, DeterministicAndSeedSensitive) {
  const auto ds = census_dataset({50, 70, 90});
  for (const auto s : {Strategy::random, Strategy::stratified, Strategy::balanced}) {
    const auto a = split(ds, {s, 0.5, 17});
    const auto b = split(ds, {s, 0.5, 17});
    const auto c = split(ds, {s, 0.5, 18});
    EXPECT_EQ(a.train_indices, b.train_indices);
    EXPECT_EQ(a.test_indices, b.test_indices);
    EXPECT_NE(a.train_indices, c.train_indices);
  }
}

TEST(SplitTest, BalancedQuotaMonotoneInRatio) {
  const auto ds = census_dataset({120, 200, 333});
  std::size_t previous = 0;
  for (int percent = 1; percent < 100; ++percent) {
    const double tr = percent / 100.0;
    if (tr > upper_limit_train_ratio(ds)) {
      EXPECT_THROW(plan_split(ds, {Strategy::balanced, tr, 0}), InfeasibleBalancedSplit);
      continue;
    }
    const auto plan = plan_split(ds, {Strategy::balanced, tr, 0});
    EXPECT_GE(plan.per_class_train[0], previous);
    previous = plan.per_class_train[0];
  }
}

TEST(DescribeTest, BalancedImbalanceRatioIsOne) {
  const auto ds = census_dataset({40, 400, 90});
  EXPECT_DOUBLE_EQ(describe(split(ds, {Strategy::balanced, 0.2, 2})).train_imbalance_ratio, 1.0);
}

TEST(DescribeTest, FormatSummaryListsClasses) {
  const auto ds = census_dataset({800, 1000});
  const auto text = format_summary(split(ds, {Strategy::balanced, 0.7, 1}), ds.class_names());
  EXPECT_NE(text.find("A\t630\t170"), std::string::npos) << text;
  EXPECT_NE(text.find("B\t630\t370"), std::string::npos) << text;
  EXPECT_NE(text.find("train imbalance ratio: 1.0000"), std::string::npos) << text;
}

TEST(SplitJsonTest, CanonicalFields) {
  const auto ds = census_dataset({4, 6});
  const auto result = split(ds, {Strategy::stratified, 0.5, 3});
  const auto j = to_json(result, ds.class_names());
  EXPECT_EQ(j.at("strategy"), "stratified");
  EXPECT_EQ(j.at("train_ratio"), 0.5);
  EXPECT_EQ(j.at("seed"), 3);
  const auto train = j.at("train_indices").get<std::vector<std::size_t>>();
  EXPECT_TRUE(std::is_sorted(train.begin(), train.end()));
  EXPECT_EQ(j.at("per_class_counts").at("A").at("train"), 2);
  EXPECT_EQ(j.at("per_class_counts").at("B").at("test"), 3);
}

TEST(StrategyTest, ParseNames) {
  EXPECT_EQ(parse_strategy("balanced"), Strategy::balanced);
  EXPECT_EQ(to_string(parse_strategy("stratified")), "stratified");
  EXPECT_THROW(parse_strategy("kfold"), InvalidArgument);
}

}  // namespace
}  // namespace balsplit
