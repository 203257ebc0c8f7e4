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

#ifndef BALSPLIT_FOREST_HPP_
#define BALSPLIT_FOREST_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "balsplit/dataset.hpp"

namespace balsplit {

struct ForestParams {
  std::size_t tree_count = 100;
  // Features examined per split; 0 means floor(sqrt(feature_count)).
  std::size_t max_features = 0;
  std::size_t min_samples_split = 2;
  // Off trains every tree on the full training set, unweighted.
  bool bootstrap = true;
  std::uint64_t seed = 0;
  // Trees are fitted on this many threads. Output does not depend on it.
  unsigned threads = 1;
};

// One node of a binary classification tree. Rows with
// x[feature] <= threshold go left.
struct TreeNode {
  static constexpr std::uint32_t kLeaf = 0xffffffffu;

  std::uint32_t feature = kLeaf;
  double threshold = 0.0;
  std::uint32_t left = 0;
  std::uint32_t right = 0;
  // Majority class of the node's (weighted) training samples.
  Label majority = 0;

  bool is_leaf() const noexcept { return feature == kLeaf; }
};

class DecisionTree {
 public:
  DecisionTree(std::size_t class_count, std::vector<TreeNode> nodes, std::vector<std::uint32_t> distribution)
      : class_count_(class_count), nodes_(std::move(nodes)), distribution_(std::move(distribution)) {}

  const std::vector<TreeNode>& nodes() const noexcept { return nodes_; }
  // Per-class sample counts (bootstrap multiplicity included) at a node.
  std::span<const std::uint32_t> distribution(std::size_t node) const {
    return {distribution_.data() + node * class_count_, class_count_};
  }
  std::size_t leaf_count() const;
  std::size_t depth() const;

  Label predict(std::span<const double> row) const;

 private:
  std::size_t class_count_;
  std::vector<TreeNode> nodes_;
  std::vector<std::uint32_t> distribution_;
};

struct ForestModel {
  std::vector<DecisionTree> trees;
  ForestParams params;
  std::size_t class_count = 0;
  std::size_t feature_count = 0;
};

// Random forest with Gini splits on midpoints between consecutive distinct
// values. Tree t draws its bootstrap sample and feature subsets from
// Rng(mix_seed(params.seed, t)). Nodes split until pure, until fewer than
// min_samples_split distinct rows remain, or until every feature is constant
// in the node.
ForestModel forest_fit(const FeatureMatrix& features, std::span<const Label> labels, const ForestParams& params);

// Plurality vote over trees; ties go to the smallest class id.
std::vector<Label> forest_predict(const ForestModel& model, const FeatureMatrix& queries);

}  // namespace balsplit

#endif  // BALSPLIT_FOREST_HPP_
