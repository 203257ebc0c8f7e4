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

#ifndef BALSPLIT_KNN_HPP_
#define BALSPLIT_KNN_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "balsplit/dataset.hpp"

namespace balsplit {

struct KnnParams {
  std::size_t k = 5;
};

// Brute-force Euclidean k-nearest-neighbour classifier. Fitting only stores
// the training data.
struct KnnModel {
  std::size_t k = 0;
  std::size_t class_count = 0;
  FeatureMatrix train_features;
  std::vector<Label> train_labels;
};

// Throws InvalidArgument on an empty training set, k == 0, k larger than
// the training set, or a label/row count mismatch.
KnnModel knn_fit(FeatureMatrix train_features, std::vector<Label> train_labels, std::size_t k);

// Majority vote over the k nearest rows. Equal distances are ordered by
// training-row index; a tied vote goes to the tied class whose nearest member
// ranks first.
std::vector<Label> knn_predict(const KnnModel& model, const FeatureMatrix& queries);

}  // namespace balsplit

#endif  // BALSPLIT_KNN_HPP_
