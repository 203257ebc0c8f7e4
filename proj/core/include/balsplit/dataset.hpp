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

#ifndef BALSPLIT_DATASET_HPP_
#define BALSPLIT_DATASET_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "balsplit/csv.hpp"
#include "balsplit/error.hpp"

namespace balsplit {

// Dense class identifier in [0, class_count).
using Label = std::uint32_t;

// Row-major matrix of encoded features.
class FeatureMatrix {
 public:
  FeatureMatrix() = default;
  FeatureMatrix(std::size_t rows, std::size_t cols, std::vector<double> values);
  FeatureMatrix(std::size_t rows, std::size_t cols) : FeatureMatrix(rows, cols, std::vector<double>(rows * cols)) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0; }

  std::span<const double> row(std::size_t r) const { return {values_.data() + r * cols_, cols_}; }
  std::span<double> row(std::size_t r) { return {values_.data() + r * cols_, cols_}; }
  double operator()(std::size_t r, std::size_t c) const { return values_[r * cols_ + c]; }
  double& operator()(std::size_t r, std::size_t c) { return values_[r * cols_ + c]; }
  std::span<const double> values() const noexcept { return values_; }

  // New matrix holding the listed rows in the listed order.
  FeatureMatrix select_rows(std::span<const std::size_t> indices) const;

  friend bool operator==(const FeatureMatrix&, const FeatureMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> values_;
};

// Labeled dataset with its class census. Immutable once constructed; the
// constructor enforces that labels are dense, every class is populated and
// the matrix and label vector agree in length.
class Dataset {
 public:
  Dataset(FeatureMatrix features, std::vector<Label> labels, std::vector<std::string> class_names,
          std::vector<std::string> feature_names = {});

  const FeatureMatrix& features() const noexcept { return features_; }
  std::span<const Label> labels() const noexcept { return labels_; }
  const std::vector<std::string>& class_names() const noexcept { return class_names_; }
  const std::vector<std::string>& feature_names() const noexcept { return feature_names_; }

  std::size_t sample_count() const noexcept { return labels_.size(); }
  std::size_t class_count() const noexcept { return class_names_.size(); }
  std::size_t feature_count() const noexcept { return features_.cols(); }

  // m(c) indexed by class id.
  std::span<const std::size_t> class_counts() const noexcept { return class_counts_; }
  std::size_t class_count_of(Label c) const { return class_counts_.at(c); }
  // Smallest class; ties go to the lower class id.
  Label minority_class() const;

  // Row indices of each class, ascending.
  std::vector<std::vector<std::size_t>> indices_by_class() const;

  friend bool operator==(const Dataset&, const Dataset&) = default;

 private:
  FeatureMatrix features_;
  std::vector<Label> labels_;
  std::vector<std::string> class_names_;
  std::vector<std::string> feature_names_;
  std::vector<std::size_t> class_counts_;
};

// Column roles used when turning a CSV table into a Dataset.
struct PreprocessSpec {
  std::string target_column;
  std::vector<std::string> categorical_columns;
  std::vector<std::string> impute_mode_columns;
  // Columns excluded from the feature matrix entirely.
  std::vector<std::string> drop_columns;

  // Checks that every named column exists and that the target is not also
  // used as a feature. Throws InvalidArgument.
  void validate(std::span<const std::string> header) const;

  // The customer-segmentation schema: label-encode the six string columns,
  // mode-impute Work_Experience and Family_Size, predict Segmentation.
  static PreprocessSpec customer_segmentation();
};

// True for cells treated as missing: empty (after trimming) or "NaN".
bool is_missing_cell(std::string_view cell);

// Distinct values sorted lexicographically map to 0, 1, 2, ...
std::vector<Label> label_encode(std::span<const std::string> column);

// Sorted distinct values of `column` (the encoder's vocabulary).
std::vector<std::string> label_vocabulary(std::span<const std::string> column);

// Replaces every missing entry with the most frequent present value; ties go
// to the smallest value. Throws InvalidArgument when nothing is present.
template <class T>
std::vector<T> impute_mode(std::span<const std::optional<T>> column) {
  std::map<T, std::size_t> frequency;
  for (const auto& v : column) {
    if (v) ++frequency[*v];
  }
  if (frequency.empty()) throw InvalidArgument("impute_mode: column has no non-missing values");
  // std::map iterates in ascending order, so the first maximum is the smallest value.
  auto mode = std::max_element(frequency.begin(), frequency.end(),
                               [](const auto& a, const auto& b) { return a.second < b.second; });
  std::vector<T> out;
  out.reserve(column.size());
  for (const auto& v : column) out.push_back(v ? *v : mode->first);
  return out;
}

// Encodes a parsed table. See README for the per-column rules.
Dataset build_dataset(const CsvTable& table, const PreprocessSpec& spec);

Dataset load_csv(const std::filesystem::path& path, const PreprocessSpec& spec,
                 const CsvOptions& options = {});

// Ordered census, e.g. {{"A", 800}, {"B", 1000}}. Order fixes nothing: class
// ids always follow the sorted class names.
using Census = std::vector<std::pair<std::string, std::size_t>>;

// Parses "A=800,B=1000". Throws InvalidArgument on malformed input or
// duplicate names.
Census parse_census(std::string_view text);

// Synthetic dataset with exactly the requested census. Class c (in sorted
// name order) is an isotropic unit-variance Gaussian centred at c * u, where
// u is the unit vector along the all-ones diagonal, so adjacent class means
// are one unit apart. Rows are shuffled. Deterministic in `seed`.
Dataset synthesize_dataset(const Census& census, std::size_t feature_dim, std::uint64_t seed);

// Raw-text rendering of a dataset (features then a "label" column holding
// class names), suitable for write_csv.
CsvTable to_csv_table(const Dataset& dataset);

}  // namespace balsplit

#endif  // BALSPLIT_DATASET_HPP_
