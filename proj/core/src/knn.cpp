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

#include "balsplit/knn.hpp"

#include <algorithm>
#include <utility>

namespace balsplit {

KnnModel knn_fit(FeatureMatrix train_features, std::vector<Label> train_labels, std::size_t k) {
  if (train_features.empty() || train_labels.empty()) throw InvalidArgument("knn: empty training set");
  if (train_features.cols() == 0) throw InvalidArgument("knn: training features have no columns");
  if (train_features.rows() != train_labels.size()) {
    throw InvalidArgument("knn: feature rows and labels differ in length");
  }
  if (k == 0) throw InvalidArgument("knn: k must be at least 1");
  if (k > train_labels.size()) {
    throw InvalidArgument("knn: k = " + std::to_string(k) + " exceeds the " +
                          std::to_string(train_labels.size()) + " training samples");
  }
  KnnModel model;
  model.k = k;
  model.class_count = *std::max_element(train_labels.begin(), train_labels.end()) + std::size_t{1};
  model.train_features = std::move(train_features);
  model.train_labels = std::move(train_labels);
  return model;
}

std::vector<Label> knn_predict(const KnnModel& model, const FeatureMatrix& queries) {
  if (queries.cols() != model.train_features.cols()) {
    throw InvalidArgument("knn: query has " + std::to_string(queries.cols()) +
                          " features, model was trained on " + std::to_string(model.train_features.cols()));
  }
  const std::size_t n_train = model.train_features.rows();
  const std::size_t dim = model.train_features.cols();
  const std::size_t k = model.k;
  const double* train = model.train_features.values().data();

  struct Neighbour {
    double distance;
    std::size_t index;
  };
  std::vector<Neighbour> best;
  best.reserve(k + 1);
  std::vector<std::size_t> votes(model.class_count);
  std::vector<Label> out;
  out.reserve(queries.rows());

  for (std::size_t q = 0; q < queries.rows(); ++q) {
    const auto query = queries.row(q);
    best.clear();
    for (std::size_t i = 0; i < n_train; ++i) {
      const double* x = train + i * dim;
      double d = 0.0;
      for (std::size_t j = 0; j < dim; ++j) {
        const double diff = x[j] - query[j];
        d += diff * diff;
      }
      // Rows arrive in index order, so a strict comparison keeps the lower
      // index ahead on equal distance.
      if (best.size() == k && d >= best.back().distance) continue;
      auto pos = std::upper_bound(best.begin(), best.end(), d,
                                  [](double v, const Neighbour& n) { return v < n.distance; });
      best.insert(pos, Neighbour{d, i});
      if (best.size() > k) best.pop_back();
    }

    std::fill(votes.begin(), votes.end(), 0);
    std::size_t top = 0;
    for (const auto& n : best) top = std::max(top, ++votes[model.train_labels[n.index]]);
    for (const auto& n : best) {
      const Label l = model.train_labels[n.index];
      if (votes[l] == top) {
        out.push_back(l);
        break;
      }
    }
  }
  return out;
}

}  // namespace balsplit
