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

#include "balsplit/split.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numeric>
#include <sstream>

#include "balsplit/rng.hpp"

namespace balsplit {

std::string_view to_string(Strategy s) noexcept {
  switch (s) {
    case Strategy::random: return "random";
    case Strategy::stratified: return "stratified";
    case Strategy::balanced: return "balanced";
  }
  return "unknown";
}

Strategy parse_strategy(std::string_view name) {
  if (name == "random") return Strategy::random;
  if (name == "stratified") return Strategy::stratified;
  if (name == "balanced") return Strategy::balanced;
  throw InvalidArgument("unknown split strategy '" + std::string(name) +
                        "' (expected random, stratified or balanced)");
}

void SplitConfig::validate() const {
  if (!(train_ratio > 0.0 && train_ratio < 1.0)) {
    std::ostringstream msg;
    msg << "train ratio must lie strictly between 0 and 1, got " << train_ratio;
    throw InvalidArgument(msg.str());
  }
}

namespace {

std::string infeasible_message(double tr, double limit, std::size_t quota, std::size_t minority) {
  std::ostringstream msg;
  msg << "balanced split infeasible: train ratio " << tr << " needs " << quota
      << " samples per class but the minority class has only " << minority
      << "; upper limit is " << std::setprecision(6) << limit;
  return msg.str();
}

}  // namespace

InfeasibleBalancedSplit::InfeasibleBalancedSplit(double train_ratio, double upper_limit,
                                                 std::size_t quota, std::size_t minority_count)
    : Error(infeasible_message(train_ratio, upper_limit, quota, minority_count)),
      train_ratio_(train_ratio),
      upper_limit_(upper_limit),
      quota_(quota),
      minority_count_(minority_count) {}

UpperLimit UpperLimit::reduced() const noexcept {
  const std::size_t g = std::gcd(numerator, denominator);
  return g == 0 ? *this : UpperLimit{numerator / g, denominator / g};
}

UpperLimit upper_limit_fraction(const Dataset& dataset) {
  const auto counts = dataset.class_counts();
  const std::size_t smallest = *std::min_element(counts.begin(), counts.end());
  return {dataset.class_count() * smallest, dataset.sample_count()};
}

double upper_limit_train_ratio(const Dataset& dataset) { return upper_limit_fraction(dataset).value(); }

std::size_t floor_fraction(double ratio, double count) {
  const double product = ratio * count;
  const double nearest = std::round(product);
  if (std::abs(product - nearest) <= 1e-9 * std::max(1.0, std::abs(product))) {
    return static_cast<std::size_t>(nearest);
  }
  return static_cast<std::size_t>(std::floor(product));
}

SplitPlan plan_split(const Dataset& dataset, const SplitConfig& config) {
  config.validate();
  const double tr = config.train_ratio;
  const std::size_t m = dataset.sample_count();
  const std::size_t n_classes = dataset.class_count();
  const auto counts = dataset.class_counts();

  SplitPlan plan;
  plan.upper_limit = upper_limit_train_ratio(dataset);

  switch (config.strategy) {
    case Strategy::random:
      plan.total_train = floor_fraction(tr, static_cast<double>(m));
      break;

    case Strategy::stratified: {
      const std::size_t target = floor_fraction(tr, static_cast<double>(m));
      plan.per_class_train.resize(n_classes);
      std::vector<double> remainder(n_classes);
      std::size_t assigned = 0;
      for (std::size_t c = 0; c < n_classes; ++c) {
        plan.per_class_train[c] = floor_fraction(tr, static_cast<double>(counts[c]));
        remainder[c] = tr * static_cast<double>(counts[c]) - static_cast<double>(plan.per_class_train[c]);
        assigned += plan.per_class_train[c];
      }
      // Largest remainder first; equal remainders go to the lower class id.
      std::vector<std::size_t> order(n_classes);
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
      while (assigned < target) {
        bool progressed = false;
        for (const std::size_t c : order) {
          if (assigned == target) break;
          if (plan.per_class_train[c] < counts[c]) {
            ++plan.per_class_train[c];
            ++assigned;
            progressed = true;
          }
        }
        if (!progressed) break;
      }
      plan.total_train = assigned;
      break;
    }

    case Strategy::balanced: {
      const std::size_t quota =
          floor_fraction(tr, static_cast<double>(m) / static_cast<double>(n_classes));
      const std::size_t smallest = *std::min_element(counts.begin(), counts.end());
      if (quota > smallest) {
        throw InfeasibleBalancedSplit(tr, plan.upper_limit, quota, smallest);
      }
      plan.per_class_train.assign(n_classes, quota);
      plan.total_train = quota * n_classes;
      break;
    }
  }
  return plan;
}

SplitResult split(const Dataset& dataset, const SplitConfig& config) {
  SplitResult result;
  result.config = config;
  result.plan = plan_split(dataset, config);
  const std::size_t m = dataset.sample_count();
  const std::size_t n_classes = dataset.class_count();
  const auto labels = dataset.labels();

  if (config.strategy == Strategy::random) {
    std::vector<std::size_t> all(m);
    std::iota(all.begin(), all.end(), std::size_t{0});
    Rng rng(mix_seed(config.seed, kRandomStream));
    const std::size_t take = result.plan.total_train;
    partial_shuffle(std::span(all), take, rng);
    result.train_indices.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(take));
    result.test_indices.assign(all.begin() + static_cast<std::ptrdiff_t>(take), all.end());
    result.plan.per_class_train.assign(n_classes, 0);
    for (const std::size_t i : result.train_indices) ++result.plan.per_class_train[labels[i]];
  } else {
    auto by_class = dataset.indices_by_class();
    result.train_indices.reserve(result.plan.total_train);
    result.test_indices.reserve(m - result.plan.total_train);
    for (std::size_t c = 0; c < n_classes; ++c) {
      auto& members = by_class[c];
      const std::size_t quota = result.plan.per_class_train[c];
      Rng rng(mix_seed(config.seed, c));
      partial_shuffle(std::span(members), quota, rng);
      const auto cut = members.begin() + static_cast<std::ptrdiff_t>(quota);
      result.train_indices.insert(result.train_indices.end(), members.begin(), cut);
      result.test_indices.insert(result.test_indices.end(), cut, members.end());
    }
  }
  std::sort(result.train_indices.begin(), result.train_indices.end());
  std::sort(result.test_indices.begin(), result.test_indices.end());

  result.per_class_test.assign(n_classes, 0);
  for (const std::size_t i : result.test_indices) ++result.per_class_test[labels[i]];
  for (std::size_t c = 0; c < n_classes; ++c) {
    if (result.per_class_test[c] == 0) {
      result.warnings.push_back("class '" + dataset.class_names()[c] +
                                "' has no samples left in the test partition");
    }
  }
  return result;
}

SplitSummary describe(const SplitResult& result) {
  SplitSummary summary;
  summary.train_counts = result.plan.per_class_train;
  summary.test_counts = result.per_class_test;
  const std::size_t train = result.train_indices.size();
  const std::size_t total = train + result.test_indices.size();
  summary.realized_train_ratio = total == 0 ? 0.0 : static_cast<double>(train) / static_cast<double>(total);
  if (train == 0 || summary.train_counts.empty()) {
    summary.train_imbalance_ratio = std::numeric_limits<double>::quiet_NaN();
  } else {
    const auto [lo, hi] = std::minmax_element(summary.train_counts.begin(), summary.train_counts.end());
    summary.train_imbalance_ratio = *lo == 0 ? std::numeric_limits<double>::infinity()
                                             : static_cast<double>(*hi) / static_cast<double>(*lo);
  }
  return summary;
}

std::string format_summary(const SplitResult& result, const std::vector<std::string>& class_names) {
  const auto summary = describe(result);
  std::ostringstream out;
  out << "strategy: " << to_string(result.config.strategy) << '\n'
      << "train ratio: " << result.config.train_ratio << " (realized " << std::fixed
      << std::setprecision(4) << summary.realized_train_ratio << ")\n"
      << "seed: " << result.config.seed << '\n'
      << "train size: " << result.train_indices.size() << ", test size: " << result.test_indices.size()
      << '\n'
      << "class\ttrain\ttest\n";
  for (std::size_t c = 0; c < summary.train_counts.size(); ++c) {
    const std::string name = c < class_names.size() ? class_names[c] : std::to_string(c);
    out << name << '\t' << summary.train_counts[c] << '\t' << summary.test_counts[c] << '\n';
  }
  out << "train imbalance ratio: " << std::setprecision(4) << summary.train_imbalance_ratio << '\n';
  for (const auto& w : result.warnings) out << "warning: " << w << '\n';
  return out.str();
}

}  // namespace balsplit
