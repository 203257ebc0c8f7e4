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

#ifndef BALSPLIT_HARNESS_HPP_
#define BALSPLIT_HARNESS_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "balsplit/dataset.hpp"
#include "balsplit/forest.hpp"
#include "balsplit/knn.hpp"
#include "balsplit/split.hpp"

namespace balsplit {

enum class ClassifierKind { knn, forest };

std::string_view to_string(ClassifierKind k) noexcept;
// Accepts "knn" and "forest". Throws InvalidArgument.
ClassifierKind parse_classifier(std::string_view name);

// Where the experiment data comes from: a CSV file when `csv` is set,
// otherwise a synthetic dataset with the given census.
struct DatasetSource {
  std::optional<std::filesystem::path> csv;
  PreprocessSpec preprocess = PreprocessSpec::customer_segmentation();
  CsvOptions csv_options;
  Census census = customer_census();
  std::size_t synthetic_dim = 2;
  std::uint64_t synthetic_seed = 0;

  // Class sizes of the customer-segmentation training file.
  static Census customer_census() { return {{"A", 1972}, {"B", 1858}, {"C", 1970}, {"D", 2268}}; }
};

// 0.50, 0.55, ..., 0.90.
std::vector<double> default_train_ratios();

struct ExperimentConfig {
  DatasetSource source;
  std::vector<Strategy> strategies = {Strategy::random, Strategy::stratified, Strategy::balanced};
  std::vector<double> train_ratios = default_train_ratios();
  std::vector<ClassifierKind> classifiers = {ClassifierKind::knn, ClassifierKind::forest};
  KnnParams knn;
  ForestParams forest;
  std::vector<std::uint64_t> seeds = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  std::filesystem::path output_dir = "results";
  // Worker threads for grid cells; 0 uses the hardware concurrency.
  unsigned threads = 0;

  // Throws InvalidArgument on an empty strategy/classifier/seed/ratio list or
  // a ratio outside (0, 1).
  void validate() const;
};

nlohmann::json to_json(const ExperimentConfig& config);
// FNV-1a 64 of the canonical JSON form, as 16 hex digits.
std::string config_hash(const ExperimentConfig& config);

enum class CellStatus { ok, infeasible, failed };
std::string_view to_string(CellStatus s) noexcept;

struct GridRow {
  Strategy strategy = Strategy::random;
  ClassifierKind classifier = ClassifierKind::knn;
  double train_ratio = 0.0;
  std::uint64_t seed = 0;
  CellStatus status = CellStatus::ok;
  // NaN unless status is ok.
  double accuracy = 0.0;
  double weighted_f1 = 0.0;
  std::size_t train_size = 0;
  std::size_t test_size = 0;
  double train_imbalance_ratio = 0.0;
  double runtime_seconds = 0.0;
  // Split warnings, infeasibility reason or failure message.
  std::string note;
};

struct GridAggregate {
  Strategy strategy = Strategy::random;
  ClassifierKind classifier = ClassifierKind::knn;
  double train_ratio = 0.0;
  std::size_t runs = 0;
  std::size_t infeasible = 0;
  // NaN when no run succeeded. Standard deviations use n - 1.
  double accuracy_mean = 0.0;
  double accuracy_std = 0.0;
  double f1_mean = 0.0;
  double f1_std = 0.0;

  bool has_value() const noexcept { return runs > 0; }
};

struct GridResult {
  // Sorted by (strategy, classifier, train_ratio, seed).
  std::vector<GridRow> rows;
  // Sorted by (strategy, classifier, train_ratio).
  std::vector<GridAggregate> aggregates;
  std::vector<double> train_ratios;
  std::vector<Strategy> strategies;
  std::vector<ClassifierKind> classifiers;
  std::size_t seed_count = 0;

  const GridAggregate* find(Strategy s, ClassifierKind c, double train_ratio) const;
};

Dataset load_source(const DatasetSource& source);

// Every (strategy, train ratio, seed) cell is split once; each classifier is
// fitted on the train partition and scored on the test partition. Balanced
// cells above the upper limit become infeasible rows.
GridResult run_grid(const Dataset& dataset, const ExperimentConfig& config);
GridResult run_grid(const ExperimentConfig& config);

// Cells in Tables II/III layout: one row per (strategy, metric), one column
// per train ratio.
struct TableData {
  std::string title;
  std::vector<std::string> column_labels;
  // {strategy label, metric label}
  std::vector<std::pair<std::string, std::string>> row_labels;
  std::vector<std::vector<std::string>> cells;
};

// Means rounded to 3 decimals; cells without a successful run show "-".
// Throws InvalidArgument when the grid has no rows for `classifier`.
TableData build_table(const GridResult& result, ClassifierKind classifier);

enum class TableFormat { text, markdown };
std::string render_table(const GridResult& result, ClassifierKind classifier, TableFormat format = TableFormat::text);
std::string render_table(const GridResult& result, std::string_view classifier, TableFormat format = TableFormat::text);

// One CSV per (classifier, metric) with columns train_ratio, strategy, mean,
// stddev. Returns the written paths.
std::vector<std::filesystem::path> emit_plot_data(const GridResult& result, const std::filesystem::path& dir);

void write_raw_csv(std::ostream& out, const GridResult& result);
void write_aggregate_csv(std::ostream& out, const GridResult& result);

// Writes raw and aggregate CSVs, text and Markdown tables, plot data and a
// manifest.json naming every artifact and the config hash under
// config.output_dir. Returns the manifest path.
std::filesystem::path write_outputs(const GridResult& result, const ExperimentConfig& config, const Dataset& dataset);

}  // namespace balsplit

#endif  // BALSPLIT_HARNESS_HPP_
