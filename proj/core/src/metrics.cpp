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

#include "balsplit/metrics.hpp"

namespace balsplit {

MetricsReport evaluate(std::span<const Label> truth, std::span<const Label> predicted, std::size_t class_count) {
  if (truth.empty()) throw InvalidArgument("evaluate: no samples");
  if (truth.size() != predicted.size()) {
    throw InvalidArgument("evaluate: " + std::to_string(truth.size()) + " true labels but " +
                          std::to_string(predicted.size()) + " predictions");
  }
  MetricsReport report;
  report.total = truth.size();
  report.confusion.assign(class_count, std::vector<std::size_t>(class_count, 0));
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (truth[i] >= class_count || predicted[i] >= class_count) {
      throw InvalidArgument("evaluate: label out of range at position " + std::to_string(i));
    }
    ++report.confusion[truth[i]][predicted[i]];
  }

  std::size_t correct = 0;
  report.per_class.resize(class_count);
  for (std::size_t c = 0; c < class_count; ++c) {
    const std::size_t tp = report.confusion[c][c];
    std::size_t row = 0;
    std::size_t column = 0;
    for (std::size_t o = 0; o < class_count; ++o) {
      row += report.confusion[c][o];
      column += report.confusion[o][c];
    }
    correct += tp;
    auto& m = report.per_class[c];
    m.support = row;
    m.precision = column == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(column);
    m.recall = row == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(row);
    const double denom = m.precision + m.recall;
    m.f1 = denom == 0.0 ? 0.0 : 2.0 * m.precision * m.recall / denom;
    report.weighted_f1 += static_cast<double>(row) / static_cast<double>(report.total) * m.f1;
  }
  report.accuracy = static_cast<double>(correct) / static_cast<double>(report.total);
  return report;
}

}  // namespace balsplit
