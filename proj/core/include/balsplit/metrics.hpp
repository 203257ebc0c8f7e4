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

#ifndef BALSPLIT_METRICS_HPP_
#define BALSPLIT_METRICS_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "balsplit/dataset.hpp"

namespace balsplit {

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t support = 0;
};

struct MetricsReport {
  double accuracy = 0.0;
  double weighted_f1 = 0.0;
  std::vector<ClassMetrics> per_class;
  // confusion[t][p]: samples of true class t predicted as p.
  std::vector<std::vector<std::size_t>> confusion;
  std::size_t total = 0;
};

// Undefined precision, recall or F1 (zero denominator) is reported as 0.
// weighted_f1 weights each class's F1 by its share of the true labels.
// Throws InvalidArgument on empty or unequal-length inputs and on labels
// outside [0, class_count).
MetricsReport evaluate(std::span<const Label> truth, std::span<const Label> predicted, std::size_t class_count);

}  // namespace balsplit

#endif  // BALSPLIT_METRICS_HPP_
