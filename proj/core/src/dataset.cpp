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

#include "balsplit/dataset.hpp"

#include <charconv>
#include <cmath>
#include <numeric>
#include <set>

#include "balsplit/rng.hpp"

namespace balsplit {

FeatureMatrix::FeatureMatrix(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
  if (values_.size() != rows * cols) {
    throw InvalidArgument("FeatureMatrix: value count does not match rows * cols");
  }
}

FeatureMatrix FeatureMatrix::select_rows(std::span<const std::size_t> indices) const {
  std::vector<double> out;
  out.reserve(indices.size() * cols_);
  for (const std::size_t r : indices) {
    const auto src = row(r);
    out.insert(out.end(), src.begin(), src.end());
  }
  return FeatureMatrix(indices.size(), cols_, std::move(out));
}

Dataset::Dataset(FeatureMatrix features, std::vector<Label> labels,
                 std::vector<std::string> class_names, std::vector<std::string> feature_names)
    : features_(std::move(features)),
      labels_(std::move(labels)),
      class_names_(std::move(class_names)),
      feature_names_(std::move(feature_names)) {
  if (labels_.empty()) throw InvalidArgument("dataset has no samples");
  if (features_.rows() != labels_.size()) {
    throw InvalidArgument("feature matrix has " + std::to_string(features_.rows()) +
                          " rows but there are " + std::to_string(labels_.size()) + " labels");
  }
  if (class_names_.size() < 2) {
    throw InvalidArgument("dataset needs at least 2 classes, found " +
                          std::to_string(class_names_.size()));
  }
  if (feature_names_.empty()) {
    for (std::size_t j = 0; j < features_.cols(); ++j) feature_names_.push_back("x" + std::to_string(j));
  } else if (feature_names_.size() != features_.cols()) {
    throw InvalidArgument("feature name count does not match feature matrix width");
  }
  class_counts_.assign(class_names_.size(), 0);
  for (const Label l : labels_) {
    if (l >= class_names_.size()) {
      throw InvalidArgument("label " + std::to_string(l) + " is not a valid class index");
    }
    ++class_counts_[l];
  }
  for (std::size_t c = 0; c < class_counts_.size(); ++c) {
    if (class_counts_[c] == 0) throw InvalidArgument("class '" + class_names_[c] + "' has no samples");
  }
}

Label Dataset::minority_class() const {
  const auto it = std::min_element(class_counts_.begin(), class_counts_.end());
  return static_cast<Label>(it - class_counts_.begin());
}

std::vector<std::vector<std::size_t>> Dataset::indices_by_class() const {
  std::vector<std::vector<std::size_t>> out(class_count());
  for (std::size_t c = 0; c < out.size(); ++c) out[c].reserve(class_counts_[c]);
  for (std::size_t i = 0; i < labels_.size(); ++i) out[labels_[i]].push_back(i);
  return out;
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

bool contains(std::span<const std::string> names, std::string_view name) {
  return std::find(names.begin(), names.end(), name) != names.end();
}

std::optional<double> parse_number(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) return std::nullopt;
  return value;
}

}  // namespace

bool is_missing_cell(std::string_view cell) {
  const auto t = trim(cell);
  return t.empty() || t == "NaN";
}

std::vector<std::string> label_vocabulary(std::span<const std::string> column) {
  const std::set<std::string> distinct(column.begin(), column.end());
  return {distinct.begin(), distinct.end()};
}

std::vector<Label> label_encode(std::span<const std::string> column) {
  const auto vocab = label_vocabulary(column);
  std::vector<Label> codes;
  codes.reserve(column.size());
  for (const auto& v : column) {
    const auto it = std::lower_bound(vocab.begin(), vocab.end(), v);
    codes.push_back(static_cast<Label>(it - vocab.begin()));
  }
  return codes;
}

void PreprocessSpec::validate(std::span<const std::string> header) const {
  auto require = [&](const std::string& name, const char* role) {
    if (!contains(header, name)) {
      throw InvalidArgument(std::string(role) + " column '" + name + "' not found in header");
    }
  };
  if (target_column.empty()) throw InvalidArgument("no target column given");
  require(target_column, "target");
  for (const auto& c : categorical_columns) require(c, "categorical");
  for (const auto& c : impute_mode_columns) require(c, "impute");
  for (const auto& c : drop_columns) require(c, "dropped");
  if (contains(categorical_columns, target_column) || contains(impute_mode_columns, target_column)) {
    throw InvalidArgument("target column '" + target_column + "' is also listed as a feature column");
  }
}

PreprocessSpec PreprocessSpec::customer_segmentation() {
  PreprocessSpec spec;
  spec.target_column = "Segmentation";
  spec.categorical_columns = {"Gender", "Ever_Married", "Graduated",
                              "Profession", "Spending_Score", "Var_1"};
  spec.impute_mode_columns = {"Work_Experience", "Family_Size"};
  return spec;
}

Dataset build_dataset(const CsvTable& table, const PreprocessSpec& spec) {
  spec.validate(table.header);
  const std::size_t m = table.rows.size();
  if (m == 0) throw InvalidArgument("csv has no data rows");
  const std::size_t target = *table.column_index(spec.target_column);

  std::vector<std::string> raw_labels;
  raw_labels.reserve(m);
  for (std::size_t r = 0; r < m; ++r) {
    const auto& cell = table.rows[r][target];
    if (is_missing_cell(cell)) {
      throw InvalidArgument("row " + std::to_string(r + 2) + ": missing target value");
    }
    raw_labels.emplace_back(trim(cell));
  }

  std::vector<std::size_t> feature_cols;
  std::vector<std::string> feature_names;
  for (std::size_t j = 0; j < table.header.size(); ++j) {
    if (j == target || contains(spec.drop_columns, table.header[j])) continue;
    feature_cols.push_back(j);
    feature_names.push_back(table.header[j]);
  }
  if (feature_cols.empty()) throw InvalidArgument("no feature columns left after dropping");

  FeatureMatrix features(m, feature_cols.size());
  for (std::size_t f = 0; f < feature_cols.size(); ++f) {
    const std::size_t j = feature_cols[f];
    const std::string& name = table.header[j];
    const bool categorical = contains(spec.categorical_columns, name);
    const bool impute = contains(spec.impute_mode_columns, name);

    std::vector<double> encoded;
    if (categorical) {
      std::vector<std::string> cells;
      cells.reserve(m);
      if (impute) {
        std::vector<std::optional<std::string>> raw;
        raw.reserve(m);
        for (const auto& row : table.rows) {
          raw.push_back(is_missing_cell(row[j]) ? std::nullopt
                                                : std::optional<std::string>(trim(row[j])));
        }
        try {
          cells = impute_mode<std::string>(raw);
        } catch (const InvalidArgument&) {
          throw InvalidArgument("column '" + name + "' has no values to impute from");
        }
      } else {
        // Missing categories stay as their own (empty) category.
        for (const auto& row : table.rows) {
          cells.emplace_back(is_missing_cell(row[j]) ? std::string_view{} : trim(row[j]));
        }
      }
      for (const Label code : label_encode(cells)) encoded.push_back(code);
    } else {
      std::vector<std::optional<double>> raw;
      raw.reserve(m);
      for (std::size_t r = 0; r < m; ++r) {
        const auto& cell = table.rows[r][j];
        if (is_missing_cell(cell)) {
          if (!impute) {
            throw InvalidArgument("row " + std::to_string(r + 2) + ", column '" + name +
                                  "': missing value in a column without imputation");
          }
          raw.emplace_back();
          continue;
        }
        const auto value = parse_number(cell);
        if (!value) {
          throw InvalidArgument("row " + std::to_string(r + 2) + ", column '" + name +
                                "': cannot parse '" + cell + "' as a number");
        }
        raw.push_back(value);
      }
      if (impute) {
        try {
          encoded = impute_mode<double>(raw);
        } catch (const InvalidArgument&) {
          throw InvalidArgument("column '" + name + "' has no values to impute from");
        }
      } else {
        for (const auto& v : raw) encoded.push_back(*v);
      }
    }
    for (std::size_t r = 0; r < m; ++r) features(r, f) = encoded[r];
  }

  auto class_names = label_vocabulary(raw_labels);
  if (class_names.size() < 2) {
    throw InvalidArgument("target column '" + spec.target_column + "' has fewer than 2 classes");
  }
  return Dataset(std::move(features), label_encode(raw_labels), std::move(class_names),
                 std::move(feature_names));
}

Dataset load_csv(const std::filesystem::path& path, const PreprocessSpec& spec,
                 const CsvOptions& options) {
  return build_dataset(read_csv(path, options), spec);
}

Census parse_census(std::string_view text) {
  Census census;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const auto item = trim(text.substr(pos, comma == std::string_view::npos ? text.npos : comma - pos));
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw InvalidArgument("census entry '" + std::string(item) + "' is not of the form NAME=COUNT");
    }
    const auto name = trim(item.substr(0, eq));
    const auto count_text = trim(item.substr(eq + 1));
    std::size_t count = 0;
    const auto [ptr, ec] = std::from_chars(count_text.data(), count_text.data() + count_text.size(), count);
    if (name.empty() || count_text.empty() || ec != std::errc{} ||
        ptr != count_text.data() + count_text.size()) {
      throw InvalidArgument("census entry '" + std::string(item) + "' is not of the form NAME=COUNT");
    }
    for (const auto& [existing, _] : census) {
      if (existing == name) throw InvalidArgument("census names class '" + std::string(name) + "' twice");
    }
    census.emplace_back(std::string(name), count);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return census;
}

Dataset synthesize_dataset(const Census& census, std::size_t feature_dim, std::uint64_t seed) {
  if (feature_dim == 0) throw InvalidArgument("synthesize_dataset: feature_dim must be at least 1");
  Census sorted = census;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t c = 0; c < sorted.size(); ++c) {
    if (sorted[c].second == 0) {
      throw InvalidArgument("synthesize_dataset: class '" + sorted[c].first + "' has zero samples");
    }
    if (c > 0 && sorted[c].first == sorted[c - 1].first) {
      throw InvalidArgument("synthesize_dataset: duplicate class '" + sorted[c].first + "'");
    }
  }
  if (sorted.size() < 2) {
    throw InvalidArgument("synthesize_dataset: need at least 2 classes, got " +
                          std::to_string(sorted.size()));
  }

  std::size_t m = 0;
  for (const auto& [_, count] : sorted) m += count;

  Rng rng(mix_seed(seed, 0));
  const double step = 1.0 / std::sqrt(static_cast<double>(feature_dim));
  std::vector<double> values;
  values.reserve(m * feature_dim);
  std::vector<Label> labels;
  labels.reserve(m);
  for (std::size_t c = 0; c < sorted.size(); ++c) {
    const double centre = static_cast<double>(c) * step;
    for (std::size_t i = 0; i < sorted[c].second; ++i) {
      for (std::size_t j = 0; j < feature_dim; ++j) values.push_back(centre + rng.normal());
      labels.push_back(static_cast<Label>(c));
    }
  }

  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  partial_shuffle(std::span(order), m, rng);

  FeatureMatrix generated(m, feature_dim, std::move(values));
  std::vector<Label> shuffled_labels(m);
  for (std::size_t i = 0; i < m; ++i) shuffled_labels[i] = labels[order[i]];

  std::vector<std::string> class_names;
  for (const auto& [name, _] : sorted) class_names.push_back(name);
  return Dataset(generated.select_rows(order), std::move(shuffled_labels), std::move(class_names));
}

CsvTable to_csv_table(const Dataset& dataset) {
  CsvTable table;
  table.header = dataset.feature_names();
  table.header.push_back("label");
  table.rows.reserve(dataset.sample_count());
  for (std::size_t r = 0; r < dataset.sample_count(); ++r) {
    std::vector<std::string> row;
    row.reserve(table.header.size());
    for (const double v : dataset.features().row(r)) row.push_back(format_double(v));
    row.push_back(dataset.class_names()[dataset.labels()[r]]);
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace balsplit
