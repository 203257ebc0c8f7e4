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

#ifndef BALSPLIT_SPLIT_HPP_
#define BALSPLIT_SPLIT_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "balsplit/dataset.hpp"
#include "balsplit/error.hpp"

namespace balsplit {

enum class Strategy { random, stratified, balanced };

std::string_view to_string(Strategy s) noexcept;
// Accepts "random", "stratified", "balanced". Throws InvalidArgument.
Strategy parse_strategy(std::string_view name);

struct SplitConfig {
  Strategy strategy = Strategy::balanced;
  double train_ratio = 0.75;
  std::uint64_t seed = 0;

  // Throws InvalidArgument unless 0 < train_ratio < 1.
  void validate() const;
};

// Resolved training quotas.
struct SplitPlan {
  std::size_t total_train = 0;
  // Indexed by class id; sums to total_train.
  std::vector<std::size_t> per_class_train;
  // Largest feasible train ratio for a balanced split of this dataset.
  double upper_limit = 0.0;
};

struct SplitResult {
  // Both ascending; disjoint; together they cover 0..m-1.
  std::vector<std::size_t> train_indices;
  std::vector<std::size_t> test_indices;
  // Realized per-class test counts, indexed by class id.
  std::vector<std::size_t> per_class_test;
  SplitPlan plan;
  SplitConfig config;
  std::vector<std::string> warnings;
};

// The balanced per-class quota floor(tr*m/N) exceeds the smallest class.
class InfeasibleBalancedSplit : public Error {
 public:
  InfeasibleBalancedSplit(double train_ratio, double upper_limit, std::size_t quota,
                          std::size_t minority_count);

  double train_ratio() const noexcept { return train_ratio_; }
  double upper_limit() const noexcept { return upper_limit_; }
  std::size_t quota() const noexcept { return quota_; }
  std::size_t minority_count() const noexcept { return minority_count_; }

 private:
  double train_ratio_;
  double upper_limit_;
  std::size_t quota_;
  std::size_t minority_count_;
};

// The balanced upper limit as the exact fraction N * min_c m(c) / m.
struct UpperLimit {
  std::size_t numerator = 0;
  std::size_t denominator = 1;

  double value() const noexcept {
    return static_cast<double>(numerator) / static_cast<double>(denominator);
  }
  // The same fraction in lowest terms.
  UpperLimit reduced() const noexcept;
};

UpperLimit upper_limit_fraction(const Dataset& dataset);
double upper_limit_train_ratio(const Dataset& dataset);

// floor(ratio * count), except that a product within 1e-9 (relative) of an
// integer snaps to that integer. Keeps decimal ratios such as 0.7 * 1800 from
// landing one below the intended count through binary rounding.
std::size_t floor_fraction(double ratio, double count);

// Quotas for a split. Balanced throws InfeasibleBalancedSplit when the quota
// exceeds the minority count. The random plan has an empty per_class_train;
// split() fills it with the realized counts.
SplitPlan plan_split(const Dataset& dataset, const SplitConfig& config);

// Draws the split. Per-class sampling (stratified, balanced) shuffles the
// ascending index list of class c with Rng(mix_seed(seed, c)); the random
// strategy shuffles all indices with Rng(mix_seed(seed, kRandomStream)).
SplitResult split(const Dataset& dataset, const SplitConfig& config);

inline constexpr std::uint64_t kRandomStream = 0xffffffffffffffffULL;

struct SplitSummary {
  std::vector<std::size_t> train_counts;
  std::vector<std::size_t> test_counts;
  double realized_train_ratio = 0.0;
  // max/min class count in the training partition; infinity if some class is
  // absent from it, NaN if the partition is empty.
  double train_imbalance_ratio = 0.0;
};

SplitSummary describe(const SplitResult& result);

// Human readable multi-line rendering of describe().
std::string format_summary(const SplitResult& result, const std::vector<std::string>& class_names);

}  // namespace balsplit

#endif  // BALSPLIT_SPLIT_HPP_
