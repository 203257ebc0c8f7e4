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

#include "balsplit/report.hpp"

#include "balsplit/csv.hpp"

namespace balsplit {

namespace {

std::string class_name(const std::vector<std::string>& names, std::size_t c) {
  return c < names.size() ? names[c] : std::to_string(c);
}

}  // namespace

nlohmann::json to_json(const SplitResult& result, const std::vector<std::string>& class_names) {
  nlohmann::json counts = nlohmann::json::object();
  for (std::size_t c = 0; c < result.plan.per_class_train.size(); ++c) {
    counts[class_name(class_names, c)] = {{"train", result.plan.per_class_train[c]},
                                          {"test", result.per_class_test.at(c)}};
  }
  return {
      {"strategy", std::string(to_string(result.config.strategy))},
      {"train_ratio", result.config.train_ratio},
      {"seed", result.config.seed},
      {"train_indices", result.train_indices},
      {"test_indices", result.test_indices},
      {"per_class_counts", std::move(counts)},
  };
}

nlohmann::json to_json(const MetricsReport& report, const std::vector<std::string>& class_names) {
  nlohmann::json per_class = nlohmann::json::object();
  for (std::size_t c = 0; c < report.per_class.size(); ++c) {
    const auto& m = report.per_class[c];
    per_class[class_name(class_names, c)] = {
        {"precision", m.precision}, {"recall", m.recall}, {"f1", m.f1}, {"support", m.support}};
  }
  return {
      {"accuracy", report.accuracy},
      {"weighted_f1", report.weighted_f1},
      {"total", report.total},
      {"per_class", std::move(per_class)},
      {"confusion", report.confusion},
  };
}

std::string metrics_csv_header() { return "strategy,train_ratio,seed,accuracy,weighted_f1"; }

std::string metrics_csv_row(Strategy strategy, double train_ratio, std::uint64_t seed, const MetricsReport& report) {
  return std::string(to_string(strategy)) + ',' + format_double(train_ratio) + ',' + std::to_string(seed) + ',' +
         format_double(report.accuracy) + ',' + format_double(report.weighted_f1);
}

nlohmann::json to_json(const KnnModel& model) {
  return {{"type", "knn"},
          {"k", model.k},
          {"class_count", model.class_count},
          {"train_rows", model.train_features.rows()},
          {"feature_count", model.train_features.cols()}};
}

nlohmann::json to_json(const ForestModel& model) {
  nlohmann::json trees = nlohmann::json::array();
  for (const auto& tree : model.trees) {
    nlohmann::json nodes = nlohmann::json::array();
    for (std::size_t i = 0; i < tree.nodes().size(); ++i) {
      const auto& n = tree.nodes()[i];
      const auto dist = tree.distribution(i);
      nlohmann::json node = {{"distribution", std::vector<std::uint32_t>(dist.begin(), dist.end())},
                             {"majority", n.majority}};
      if (!n.is_leaf()) {
        node["feature"] = n.feature;
        node["threshold"] = n.threshold;
        node["left"] = n.left;
        node["right"] = n.right;
      }
      nodes.push_back(std::move(node));
    }
    trees.push_back(std::move(nodes));
  }
  return {{"type", "forest"},
          {"tree_count", model.params.tree_count},
          {"max_features", model.params.max_features},
          {"min_samples_split", model.params.min_samples_split},
          {"bootstrap", model.params.bootstrap},
          {"seed", model.params.seed},
          {"class_count", model.class_count},
          {"feature_count", model.feature_count},
          {"trees", std::move(trees)}};
}

}  // namespace balsplit
