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

#include "balsplit/forest.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <thread>

#include "balsplit/rng.hpp"

namespace balsplit {

std::size_t DecisionTree::leaf_count() const {
  return static_cast<std::size_t>(
      std::count_if(nodes_.begin(), nodes_.end(), [](const TreeNode& n) { return n.is_leaf(); }));
}

std::size_t DecisionTree::depth() const {
  std::vector<std::size_t> level(nodes_.size(), 0);
  std::size_t deepest = 0;
  // Children always have larger ids than their parent.
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    deepest = std::max(deepest, level[i]);
    if (!nodes_[i].is_leaf()) {
      level[nodes_[i].left] = level[i] + 1;
      level[nodes_[i].right] = level[i] + 1;
    }
  }
  return deepest;
}

Label DecisionTree::predict(std::span<const double> row) const {
  std::size_t node = 0;
  while (!nodes_[node].is_leaf()) {
    const auto& n = nodes_[node];
    node = row[n.feature] <= n.threshold ? n.left : n.right;
  }
  return nodes_[node].majority;
}

namespace {

// Training data shared by every tree of one forest: column-major values and,
// per feature, all row ids ordered by (value, row id).
struct SharedData {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t classes = 0;
  std::vector<double> columns;
  std::vector<std::uint32_t> presorted;
  std::span<const Label> labels;

  double value(std::size_t feature, std::uint32_t row) const { return columns[feature * rows + row]; }
};

SharedData prepare(const FeatureMatrix& features, std::span<const Label> labels, std::size_t classes) {
  SharedData data;
  data.rows = features.rows();
  data.cols = features.cols();
  data.classes = classes;
  data.labels = labels;
  data.columns.resize(data.rows * data.cols);
  for (std::size_t r = 0; r < data.rows; ++r) {
    for (std::size_t f = 0; f < data.cols; ++f) data.columns[f * data.rows + r] = features(r, f);
  }
  data.presorted.resize(data.rows * data.cols);
  for (std::size_t f = 0; f < data.cols; ++f) {
    auto begin = data.presorted.begin() + static_cast<std::ptrdiff_t>(f * data.rows);
    auto end = begin + static_cast<std::ptrdiff_t>(data.rows);
    std::iota(begin, end, std::uint32_t{0});
    const double* col = data.columns.data() + f * data.rows;
    std::stable_sort(begin, end, [col](std::uint32_t a, std::uint32_t b) { return col[a] < col[b]; });
  }
  return data;
}

struct SplitChoice {
  std::size_t feature = 0;
  double threshold = 0.0;
  double score = -std::numeric_limits<double>::infinity();
};

class TreeBuilder {
 public:
  TreeBuilder(const SharedData& data, const ForestParams& params, std::size_t max_features, std::uint64_t seed)
      : data_(data), params_(params), max_features_(max_features), rng_(seed) {}

  DecisionTree build() {
    draw_weights();
    const std::size_t n = in_bag_;
    const std::size_t k = data_.classes;

    feature_order_.resize(data_.cols);
    std::iota(feature_order_.begin(), feature_order_.end(), std::size_t{0});
    go_left_.assign(data_.rows, 0);
    scratch_.resize(n);
    left_counts_.resize(k);
    right_counts_.resize(k);

    struct Pending {
      std::size_t begin;
      std::size_t end;
      std::uint32_t id;
    };
    std::vector<Pending> stack;
    nodes_.emplace_back();
    distribution_.resize(k);
    stack.push_back({0, n, 0});

    while (!stack.empty()) {
      const Pending item = stack.back();
      stack.pop_back();

      auto dist = node_distribution(item.begin, item.end);
      std::copy(dist.begin(), dist.end(), distribution_.begin() + static_cast<std::ptrdiff_t>(item.id * k));
      nodes_[item.id].majority = static_cast<Label>(std::max_element(dist.begin(), dist.end()) - dist.begin());

      const std::uint32_t weight = std::accumulate(dist.begin(), dist.end(), std::uint32_t{0});
      const bool pure = dist[nodes_[item.id].majority] == weight;
      if (pure || item.end - item.begin < params_.min_samples_split) continue;

      const auto choice = find_split(item.begin, item.end, dist, weight);
      if (!choice) continue;

      const std::size_t mid = partition(item.begin, item.end, *choice);
      const auto left_id = static_cast<std::uint32_t>(nodes_.size());
      nodes_.emplace_back();
      nodes_.emplace_back();
      distribution_.resize(nodes_.size() * k);
      auto& node = nodes_[item.id];
      node.feature = static_cast<std::uint32_t>(choice->feature);
      node.threshold = choice->threshold;
      node.left = left_id;
      node.right = left_id + 1;
      stack.push_back({mid, item.end, left_id + 1});
      stack.push_back({item.begin, mid, left_id});
    }
    return DecisionTree(k, std::move(nodes_), std::move(distribution_));
  }

 private:
  void draw_weights() {
    weights_.assign(data_.rows, 0);
    if (params_.bootstrap) {
      for (std::size_t i = 0; i < data_.rows; ++i) ++weights_[rng_.uniform_index(data_.rows)];
    } else {
      std::fill(weights_.begin(), weights_.end(), 1u);
    }
    in_bag_ = static_cast<std::size_t>(std::count_if(weights_.begin(), weights_.end(),
                                                     [](std::uint32_t w) { return w > 0; }));
    sorted_.resize(in_bag_ * data_.cols);
    for (std::size_t f = 0; f < data_.cols; ++f) {
      const std::uint32_t* src = data_.presorted.data() + f * data_.rows;
      std::uint32_t* dst = sorted_.data() + f * in_bag_;
      for (std::size_t i = 0; i < data_.rows; ++i) {
        if (weights_[src[i]] > 0) *dst++ = src[i];
      }
    }
  }

  std::vector<std::uint32_t> node_distribution(std::size_t begin, std::size_t end) const {
    std::vector<std::uint32_t> dist(data_.classes, 0);
    for (std::size_t i = begin; i < end; ++i) {
      const std::uint32_t row = sorted_[i];
      dist[data_.labels[row]] += weights_[row];
    }
    return dist;
  }

  std::optional<SplitChoice> find_split(std::size_t begin, std::size_t end,
                                        std::span<const std::uint32_t> dist, std::uint32_t weight) {
    const std::size_t d = data_.cols;
    const std::size_t k = data_.classes;
    SplitChoice best;
    bool found = false;
    std::size_t evaluated = 0;

    for (std::size_t i = 0; i < d && evaluated < max_features_; ++i) {
      const std::size_t j = i + rng_.uniform_index(d - i);
      std::swap(feature_order_[i], feature_order_[j]);
      const std::size_t f = feature_order_[i];

      const std::uint32_t* rows = sorted_.data() + f * in_bag_;
      const double* col = data_.columns.data() + f * data_.rows;
      if (col[rows[begin]] == col[rows[end - 1]]) continue;  // constant here; does not count
      ++evaluated;

      std::fill(left_counts_.begin(), left_counts_.end(), 0.0);
      for (std::size_t c = 0; c < k; ++c) right_counts_[c] = dist[c];
      double left_weight = 0.0;
      double right_weight = weight;
      double left_sq = 0.0;
      double right_sq = 0.0;
      for (std::size_t c = 0; c < k; ++c) right_sq += right_counts_[c] * right_counts_[c];

      for (std::size_t p = begin; p + 1 < end; ++p) {
        const std::uint32_t row = rows[p];
        const double w = weights_[row];
        const Label c = data_.labels[row];
        // Incremental update of the sums of squared class weights.
        left_sq += w * (2.0 * left_counts_[c] + w);
        right_sq -= w * (2.0 * right_counts_[c] - w);
        left_counts_[c] += w;
        right_counts_[c] -= w;
        left_weight += w;
        right_weight -= w;

        const double here = col[row];
        const double next = col[rows[p + 1]];
        if (!(here < next)) continue;
        // Minimising weighted Gini impurity equals maximising this.
        const double score = left_sq / left_weight + right_sq / right_weight;
        if (score > best.score) {
          double threshold = here + (next - here) / 2.0;
          if (!(threshold < next)) threshold = here;
          best = {f, threshold, score};
          found = true;
        }
      }
    }
    if (!found) return std::nullopt;
    return best;
  }

  // Stable partition of [begin, end) in every feature's ordering; returns the
  // first position on the right side.
  std::size_t partition(std::size_t begin, std::size_t end, const SplitChoice& choice) {
    const std::uint32_t* split_rows = sorted_.data() + choice.feature * in_bag_;
    std::size_t mid = begin;
    for (std::size_t p = begin; p < end; ++p) {
      const std::uint32_t row = split_rows[p];
      const bool left = data_.value(choice.feature, row) <= choice.threshold;
      go_left_[row] = left ? 1 : 0;
      mid += left ? 1 : 0;
    }
    for (std::size_t f = 0; f < data_.cols; ++f) {
      std::uint32_t* rows = sorted_.data() + f * in_bag_;
      std::size_t l = begin;
      std::size_t r = 0;
      for (std::size_t p = begin; p < end; ++p) {
        const std::uint32_t row = rows[p];
        if (go_left_[row]) {
          rows[l++] = row;
        } else {
          scratch_[r++] = row;
        }
      }
      std::copy(scratch_.begin(), scratch_.begin() + static_cast<std::ptrdiff_t>(r),
                rows + static_cast<std::ptrdiff_t>(l));
    }
    return mid;
  }

  const SharedData& data_;
  const ForestParams& params_;
  std::size_t max_features_;
  Rng rng_;

  std::vector<std::uint32_t> weights_;
  std::size_t in_bag_ = 0;
  std::vector<std::uint32_t> sorted_;
  std::vector<std::size_t> feature_order_;
  std::vector<std::uint8_t> go_left_;
  std::vector<std::uint32_t> scratch_;
  std::vector<double> left_counts_;
  std::vector<double> right_counts_;

  std::vector<TreeNode> nodes_;
  std::vector<std::uint32_t> distribution_;
};

}  // namespace

ForestModel forest_fit(const FeatureMatrix& features, std::span<const Label> labels, const ForestParams& params) {
  if (features.empty() || labels.empty()) throw InvalidArgument("forest: empty training set");
  if (features.rows() != labels.size()) throw InvalidArgument("forest: feature rows and labels differ in length");
  if (features.cols() == 0) throw InvalidArgument("forest: training features have no columns");
  if (params.tree_count == 0) throw InvalidArgument("forest: tree_count must be at least 1");
  if (features.rows() > std::numeric_limits<std::uint32_t>::max()) {
    throw InvalidArgument("forest: too many training rows");
  }

  ForestModel model;
  model.params = params;
  model.feature_count = features.cols();
  model.class_count = *std::max_element(labels.begin(), labels.end()) + std::size_t{1};

  std::size_t max_features = params.max_features;
  if (max_features == 0) {
    max_features = static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(features.cols()))));
  }
  max_features = std::clamp<std::size_t>(max_features, 1, features.cols());
  model.params.max_features = max_features;

  const SharedData data = prepare(features, labels, model.class_count);
  std::vector<std::optional<DecisionTree>> trees(params.tree_count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t = next++; t < trees.size(); t = next++) {
      trees[t] = TreeBuilder(data, params, max_features, mix_seed(params.seed, t)).build();
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(params.threads, static_cast<unsigned>(trees.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  model.trees.reserve(trees.size());
  for (auto& t : trees) model.trees.push_back(std::move(*t));
  return model;
}

std::vector<Label> forest_predict(const ForestModel& model, const FeatureMatrix& queries) {
  if (queries.cols() != model.feature_count) {
    throw InvalidArgument("forest: query has " + std::to_string(queries.cols()) +
                          " features, model was trained on " + std::to_string(model.feature_count));
  }
  std::vector<Label> out;
  out.reserve(queries.rows());
  std::vector<std::size_t> votes(model.class_count);
  for (std::size_t q = 0; q < queries.rows(); ++q) {
    std::fill(votes.begin(), votes.end(), 0);
    const auto row = queries.row(q);
    for (const auto& tree : model.trees) ++votes[tree.predict(row)];
    out.push_back(static_cast<Label>(std::max_element(votes.begin(), votes.end()) - votes.begin()));
  }
  return out;
}

}  // namespace balsplit
