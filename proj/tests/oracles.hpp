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

#ifndef BALSPLIT_TESTS_ORACLES_HPP_
#define BALSPLIT_TESTS_ORACLES_HPP_

// Naive reference computations used as independent oracles by the tests.
// Nothing here calls into the library code paths it is compared against.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

namespace balsplit::oracle {

// floor(numerator * count / denominator) in exact integer arithmetic, for a
// train ratio given as the fraction numerator/denominator.
inline std::size_t floor_ratio(std::size_t numerator, std::size_t denominator, std::size_t count,
                               std::size_t divisor = 1) {
  return (numerator * count) / (denominator * divisor);
}

// Mode by explicit frequency counting; smallest value wins ties.
template <class T>
T mode_of(const std::vector<std::optional<T>>& column) {
  std::vector<std::pair<T, std::size_t>> freq;
  for (const auto& v : column) {
    if (!v) continue;
    bool seen = false;
    for (auto& [value, count] : freq) {
      if (value == *v) {
        ++count;
        seen = true;
      }
    }
    if (!seen) freq.emplace_back(*v, 1);
  }
  T best = freq.front().first;
  std::size_t best_count = 0;
  for (const auto& [value, count] : freq) {
    if (count > best_count || (count == best_count && value < best)) {
      best = value;
      best_count = count;
    }
  }
  return best;
}

struct NaiveMetrics {
  double accuracy = 0.0;
  double weighted_f1 = 0.0;
  std::vector<double> precision, recall, f1;
  std::vector<std::size_t> support;
};

// Counts TP/FP/FN per class by a pairwise pass over every sample for every
// class, with no confusion matrix.
inline NaiveMetrics naive_metrics(const std::vector<std::uint32_t>& truth, const std::vector<std::uint32_t>& pred,
                                  std::size_t classes) {
  NaiveMetrics m;
  const double n = static_cast<double>(truth.size());
  std::size_t correct = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) correct += truth[i] == pred[i];
  m.accuracy = correct / n;
  for (std::uint32_t c = 0; c < classes; ++c) {
    std::size_t tp = 0, fp = 0, fn = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
      if (truth[i] == c && pred[i] == c) ++tp;
      if (truth[i] != c && pred[i] == c) ++fp;
      if (truth[i] == c && pred[i] != c) ++fn;
    }
    const double p = tp + fp == 0 ? 0.0 : double(tp) / double(tp + fp);
    const double r = tp + fn == 0 ? 0.0 : double(tp) / double(tp + fn);
    const double f = p + r == 0.0 ? 0.0 : 2 * p * r / (p + r);
    m.precision.push_back(p);
    m.recall.push_back(r);
    m.f1.push_back(f);
    m.support.push_back(tp + fn);
    m.weighted_f1 += (tp + fn) / n * f;
  }
  return m;
}

// KNN by fully sorting all training rows by (distance, index).
inline std::uint32_t brute_knn(const std::vector<std::vector<double>>& train, const std::vector<std::uint32_t>& labels,
                               const std::vector<double>& query, std::size_t k) {
  std::vector<std::pair<double, std::size_t>> order;
  for (std::size_t i = 0; i < train.size(); ++i) {
    double d = 0;
    for (std::size_t j = 0; j < query.size(); ++j) d += (train[i][j] - query[j]) * (train[i][j] - query[j]);
    order.emplace_back(d, i);
  }
  std::sort(order.begin(), order.end());
  std::map<std::uint32_t, std::size_t> votes;
  std::size_t top = 0;
  for (std::size_t r = 0; r < k; ++r) top = std::max(top, ++votes[labels[order[r].second]]);
  for (std::size_t r = 0; r < k; ++r) {
    if (votes[labels[order[r].second]] == top) return labels[order[r].second];
  }
  return 0;
}

// True when some tree of axis-aligned splits (thresholds at midpoints of
// distinct values) reaches pure leaves, found by exhaustive recursion.
inline bool tree_separable(const std::vector<std::vector<double>>& x, const std::vector<std::uint32_t>& y,
                           const std::vector<std::size_t>& rows) {
  bool pure = std::all_of(rows.begin(), rows.end(), [&](std::size_t r) { return y[r] == y[rows.front()]; });
  if (pure) return true;
  for (std::size_t f = 0; f < x.front().size(); ++f) {
    std::vector<double> values;
    for (const auto r : rows) values.push_back(x[r][f]);
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    for (std::size_t i = 0; i + 1 < values.size(); ++i) {
      const double t = (values[i] + values[i + 1]) / 2;
      std::vector<std::size_t> left, right;
      for (const auto r : rows) (x[r][f] <= t ? left : right).push_back(r);
      if (tree_separable(x, y, left) && tree_separable(x, y, right)) return true;
    }
  }
  return false;
}

}  // namespace balsplit::oracle

#endif  // BALSPLIT_TESTS_ORACLES_HPP_
