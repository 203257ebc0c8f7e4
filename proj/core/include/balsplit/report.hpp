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

#ifndef BALSPLIT_REPORT_HPP_
#define BALSPLIT_REPORT_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "balsplit/forest.hpp"
#include "balsplit/knn.hpp"
#include "balsplit/metrics.hpp"
#include "balsplit/split.hpp"

namespace balsplit {

// {strategy, train_ratio, seed, train_indices, test_indices, per_class_counts}
// with index lists ascending.
nlohmann::json to_json(const SplitResult& result, const std::vector<std::string>& class_names);

nlohmann::json to_json(const MetricsReport& report, const std::vector<std::string>& class_names);

// Flat CSV form: strategy,train_ratio,seed,accuracy,weighted_f1
std::string metrics_csv_header();
std::string metrics_csv_row(Strategy strategy, double train_ratio, std::uint64_t seed, const MetricsReport& report);

// Debug dumps; the layout may change between versions.
nlohmann::json to_json(const KnnModel& model);
nlohmann::json to_json(const ForestModel& model);

}  // namespace balsplit

#endif  // BALSPLIT_REPORT_HPP_
