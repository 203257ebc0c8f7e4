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

#include "balsplit/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>
#include <tuple>

#include "balsplit/csv.hpp"
#include "balsplit/metrics.hpp"
#include "balsplit/rng.hpp"

namespace balsplit {

std::string_view to_string(ClassifierKind k) noexcept {
  switch (k) {
    case ClassifierKind::knn: return "knn";
    case ClassifierKind::forest: return "forest";
  }
  return "unknown";
}

ClassifierKind parse_classifier(std::string_view name) {
  if (name == "knn") return ClassifierKind::knn;
  if (name == "forest") return ClassifierKind::forest;
  throw InvalidArgument("unknown classifier '" + std::string(name) + "' (expected knn or forest)");
}

std::string_view to_string(CellStatus s) noexcept {
  switch (s) {
    case CellStatus::ok: return "ok";
    case CellStatus::infeasible: return "infeasible";
    case CellStatus::failed: return "failed";
  }
  return "unknown";
}

std::vector<double> default_train_ratios() {
  std::vector<double> ratios;
  for (int percent = 50; percent <= 90; percent += 5) ratios.push_back(percent / 100.0);
  return ratios;
}

void ExperimentConfig::validate() const {
  if (strategies.empty()) throw InvalidArgument("experiment needs at least one strategy");
  if (classifiers.empty()) throw InvalidArgument("experiment needs at least one classifier");
  if (seeds.empty()) throw InvalidArgument("experiment needs at least one seed");
  if (train_ratios.empty()) throw InvalidArgument("experiment needs at least one train ratio");
  for (const double tr : train_ratios) SplitConfig{Strategy::random, tr, 0}.validate();
  if (knn.k == 0) throw InvalidArgument("knn k must be at least 1");
  if (forest.tree_count == 0) throw InvalidArgument("forest needs at least one tree");
}

nlohmann::json to_json(const ExperimentConfig& config) {
  nlohmann::json source;
  if (config.source.csv) {
    const auto& p = config.source.preprocess;
    source = {{"csv", config.source.csv->generic_string()},
              {"delimiter", std::string(1, config.source.csv_options.delimiter)},
              {"target", p.target_column},
              {"categorical", p.categorical_columns},
              {"impute", p.impute_mode_columns},
              {"drop", p.drop_columns}};
  } else {
    nlohmann::json census = nlohmann::json::array();
    for (const auto& [name, count] : config.source.census) census.push_back({name, count});
    source = {{"census", census},
              {"synthetic_dim", config.source.synthetic_dim},
              {"synthetic_seed", config.source.synthetic_seed}};
  }
  std::vector<std::string> strategies;
  for (const auto s : config.strategies) strategies.emplace_back(to_string(s));
  std::vector<std::string> classifiers;
  for (const auto c : config.classifiers) classifiers.emplace_back(to_string(c));
  return {{"source", source},
          {"strategies", strategies},
          {"train_ratios", config.train_ratios},
          {"classifiers", classifiers},
          {"knn", {{"k", config.knn.k}}},
          {"forest",
           {{"trees", config.forest.tree_count},
            {"max_features", config.forest.max_features},
            {"min_samples_split", config.forest.min_samples_split},
            {"bootstrap", config.forest.bootstrap},
            {"seed", config.forest.seed}}},
          {"seeds", config.seeds}};
}

std::string config_hash(const ExperimentConfig& config) {
  const std::string text = to_json(config).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << h;
  return out.str();
}

const GridAggregate* GridResult::find(Strategy s, ClassifierKind c, double train_ratio) const {
  for (const auto& a : aggregates) {
    if (a.strategy == s && a.classifier == c && a.train_ratio == train_ratio) return &a;
  }
  return nullptr;
}

Dataset load_source(const DatasetSource& source) {
  if (source.csv) return load_csv(*source.csv, source.preprocess, source.csv_options);
  return synthesize_dataset(source.census, source.synthetic_dim, source.synthetic_seed);
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Cell {
  Strategy strategy;
  double train_ratio;
  std::uint64_t seed;
};

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::vector<GridRow> run_cell(const Dataset& dataset, const ExperimentConfig& config, const Cell& cell) {
  using Clock = std::chrono::steady_clock;
  std::vector<GridRow> rows;
  auto base_row = [&](ClassifierKind kind) {
    GridRow row;
    row.strategy = cell.strategy;
    row.classifier = kind;
    row.train_ratio = cell.train_ratio;
    row.seed = cell.seed;
    return row;
  };

  const auto split_start = Clock::now();
  SplitResult parts;
  try {
    parts = split(dataset, SplitConfig{cell.strategy, cell.train_ratio, cell.seed});
  } catch (const InfeasibleBalancedSplit& e) {
    for (const auto kind : config.classifiers) {
      auto row = base_row(kind);
      row.status = CellStatus::infeasible;
      row.accuracy = row.weighted_f1 = row.train_imbalance_ratio = kNaN;
      row.note = e.what();
      rows.push_back(std::move(row));
    }
    return rows;
  }
  const FeatureMatrix train_x = dataset.features().select_rows(parts.train_indices);
  const FeatureMatrix test_x = dataset.features().select_rows(parts.test_indices);
  std::vector<Label> train_y;
  std::vector<Label> test_y;
  for (const auto i : parts.train_indices) train_y.push_back(dataset.labels()[i]);
  for (const auto i : parts.test_indices) test_y.push_back(dataset.labels()[i]);
  const double split_seconds = std::chrono::duration<double>(Clock::now() - split_start).count();
  const auto summary = describe(parts);

  for (const auto kind : config.classifiers) {
    auto row = base_row(kind);
    row.train_size = parts.train_indices.size();
    row.test_size = parts.test_indices.size();
    row.train_imbalance_ratio = summary.train_imbalance_ratio;
    row.note = join(parts.warnings, "; ");
    const auto start = Clock::now();
    try {
      std::vector<Label> predicted;
      if (kind == ClassifierKind::knn) {
        predicted = knn_predict(knn_fit(train_x, train_y, config.knn.k), test_x);
      } else {
        ForestParams params = config.forest;
        params.seed = mix_seed(config.forest.seed, cell.seed);
        params.threads = 1;
        predicted = forest_predict(forest_fit(train_x, train_y, params), test_x);
      }
      const auto report = evaluate(test_y, predicted, dataset.class_count());
      row.accuracy = report.accuracy;
      row.weighted_f1 = report.weighted_f1;
    } catch (const Error& e) {
      row.status = CellStatus::failed;
      row.accuracy = row.weighted_f1 = kNaN;
      row.note = e.what();
    }
    row.runtime_seconds = split_seconds + std::chrono::duration<double>(Clock::now() - start).count();
    rows.push_back(std::move(row));
  }
  return rows;
}

auto row_key(const GridRow& r) { return std::make_tuple(r.strategy, r.classifier, r.train_ratio, r.seed); }

std::pair<double, double> mean_std(const std::vector<double>& v) {
  if (v.empty()) return {kNaN, kNaN};
  double mean = 0.0;
  for (const double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  if (v.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (const double x : v) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / static_cast<double>(v.size() - 1))};
}

std::vector<GridAggregate> aggregate(const std::vector<GridRow>& rows) {
  std::vector<GridAggregate> out;
  std::vector<double> acc;
  std::vector<double> f1;
  for (std::size_t i = 0; i < rows.size();) {
    std::size_t j = i;
    GridAggregate a;
    a.strategy = rows[i].strategy;
    a.classifier = rows[i].classifier;
    a.train_ratio = rows[i].train_ratio;
    acc.clear();
    f1.clear();
    while (j < rows.size() && rows[j].strategy == a.strategy && rows[j].classifier == a.classifier &&
           rows[j].train_ratio == a.train_ratio) {
      if (rows[j].status == CellStatus::ok) {
        acc.push_back(rows[j].accuracy);
        f1.push_back(rows[j].weighted_f1);
      } else if (rows[j].status == CellStatus::infeasible) {
        ++a.infeasible;
      }
      ++j;
    }
    a.runs = acc.size();
    std::tie(a.accuracy_mean, a.accuracy_std) = mean_std(acc);
    std::tie(a.f1_mean, a.f1_std) = mean_std(f1);
    out.push_back(a);
    i = j;
  }
  return out;
}

template <class T>
std::vector<T> sorted_unique(std::vector<T> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

GridResult run_grid(const Dataset& dataset, const ExperimentConfig& config) {
  config.validate();
  GridResult result;
  result.strategies = sorted_unique(config.strategies);
  result.classifiers = sorted_unique(config.classifiers);
  result.train_ratios = sorted_unique(config.train_ratios);
  const auto seeds = sorted_unique(config.seeds);
  result.seed_count = seeds.size();

  ExperimentConfig normalized = config;
  normalized.classifiers = result.classifiers;

  std::vector<Cell> cells;
  for (const auto s : result.strategies) {
    for (const double tr : result.train_ratios) {
      for (const auto seed : seeds) cells.push_back({s, tr, seed});
    }
  }

  std::vector<std::vector<GridRow>> per_cell(cells.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) per_cell[i] = run_cell(dataset, normalized, cells[i]);
  };
  unsigned threads = config.threads == 0 ? std::thread::hardware_concurrency() : config.threads;
  threads = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(std::max<std::size_t>(cells.size(), 1)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  for (auto& rows : per_cell) {
    for (auto& r : rows) result.rows.push_back(std::move(r));
  }
  std::sort(result.rows.begin(), result.rows.end(),
            [](const GridRow& a, const GridRow& b) { return row_key(a) < row_key(b); });
  result.aggregates = aggregate(result.rows);
  return result;
}

GridResult run_grid(const ExperimentConfig& config) {
  config.validate();
  return run_grid(load_source(config.source), config);
}

namespace {

std::string strategy_label(Strategy s) {
  switch (s) {
    case Strategy::random: return "Random split";
    case Strategy::stratified: return "Stratified split";
    case Strategy::balanced: return "Balanced split";
  }
  return "";
}

std::string classifier_label(ClassifierKind k) {
  return k == ClassifierKind::knn ? "K-nearest neighbour" : "Random forest";
}

std::string fixed3(double v) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(3) << v;
  return out.str();
}

const char* const kMissingCell = "-";

// Display width, counting each UTF-8 code point once.
std::size_t display_width(const std::string& s) {
  return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [](char ch) {
    return (static_cast<unsigned char>(ch) & 0xC0) != 0x80;
  }));
}

std::string pad(const std::string& s, std::size_t width) {
  const std::size_t w = display_width(s);
  return w >= width ? s : s + std::string(width - w, ' ');
}

}  // namespace

TableData build_table(const GridResult& result, ClassifierKind classifier) {
  const bool present = std::any_of(result.rows.begin(), result.rows.end(),
                                   [&](const GridRow& r) { return r.classifier == classifier; });
  if (!present) {
    throw InvalidArgument("grid has no rows for classifier '" + std::string(to_string(classifier)) + "'");
  }
  TableData table;
  table.title = classifier_label(classifier) + ": accuracy and weighted F-1 (mean over " +
                std::to_string(result.seed_count) + (result.seed_count == 1 ? " seed)" : " seeds)");
  for (const double tr : result.train_ratios) table.column_labels.push_back(format_double(tr));
  for (const auto s : result.strategies) {
    for (const bool is_f1 : {false, true}) {
      table.row_labels.emplace_back(is_f1 ? "" : strategy_label(s), is_f1 ? "F-1 score" : "Accuracy score");
      std::vector<std::string> row;
      for (const double tr : result.train_ratios) {
        const auto* a = result.find(s, classifier, tr);
        if (a == nullptr || !a->has_value()) {
          row.emplace_back(kMissingCell);
        } else {
          row.push_back(fixed3(is_f1 ? a->f1_mean : a->accuracy_mean));
        }
      }
      table.cells.push_back(std::move(row));
    }
  }
  return table;
}

std::string render_table(const GridResult& result, ClassifierKind classifier, TableFormat format) {
  const TableData table = build_table(result, classifier);
  std::vector<std::string> header = {"Split strategy", "Metric"};
  header.insert(header.end(), table.column_labels.begin(), table.column_labels.end());
  std::vector<std::vector<std::string>> body;
  for (std::size_t r = 0; r < table.cells.size(); ++r) {
    std::vector<std::string> line = {table.row_labels[r].first, table.row_labels[r].second};
    line.insert(line.end(), table.cells[r].begin(), table.cells[r].end());
    body.push_back(std::move(line));
  }

  std::ostringstream out;
  if (format == TableFormat::markdown) {
    out << "**" << table.title << "**\n\n|";
    for (const auto& h : header) out << ' ' << h << " |";
    out << "\n|";
    for (std::size_t i = 0; i < header.size(); ++i) out << (i < 2 ? " --- |" : " ---: |");
    out << '\n';
    for (const auto& line : body) {
      out << '|';
      for (const auto& cell : line) out << ' ' << cell << " |";
      out << '\n';
    }
    return out.str();
  }

  std::vector<std::size_t> widths(header.size());
  for (std::size_t i = 0; i < header.size(); ++i) widths[i] = display_width(header[i]);
  for (const auto& line : body) {
    for (std::size_t i = 0; i < line.size(); ++i) widths[i] = std::max(widths[i], display_width(line[i]));
  }
  auto emit = [&](const std::vector<std::string>& line) {
    std::string text;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (i) text += "  ";
      text += pad(line[i], widths[i]);
    }
    while (!text.empty() && text.back() == ' ') text.pop_back();
    out << text << '\n';
  };
  out << table.title << '\n';
  emit(header);
  for (const auto& line : body) emit(line);
  return out.str();
}

std::string render_table(const GridResult& result, std::string_view classifier, TableFormat format) {
  return render_table(result, parse_classifier(classifier), format);
}

namespace {

std::string number_or_empty(double v) { return std::isnan(v) ? std::string() : format_double(v); }

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace

std::vector<std::filesystem::path> emit_plot_data(const GridResult& result, const std::filesystem::path& dir) {
  if (result.rows.empty()) throw InvalidArgument("emit_plot_data: empty grid result");
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  for (const auto kind : result.classifiers) {
    for (const bool is_f1 : {false, true}) {
      const auto path = dir / (std::string(to_string(kind)) + (is_f1 ? "_f1.csv" : "_accuracy.csv"));
      auto out = open_output(path);
      out << "train_ratio,strategy,mean,stddev\n";
      for (const double tr : result.train_ratios) {
        for (const auto s : result.strategies) {
          const auto* a = result.find(s, kind, tr);
          const double mean = a ? (is_f1 ? a->f1_mean : a->accuracy_mean) : kNaN;
          const double sd = a ? (is_f1 ? a->f1_std : a->accuracy_std) : kNaN;
          out << format_double(tr) << ',' << to_string(s) << ',' << number_or_empty(mean) << ','
              << number_or_empty(sd) << '\n';
        }
      }
      finish(out, path);
      written.push_back(path);
    }
  }
  return written;
}

void write_raw_csv(std::ostream& out, const GridResult& result) {
  out << "strategy,classifier,train_ratio,seed,status,accuracy,weighted_f1,train_size,test_size,"
         "train_imbalance_ratio,runtime_seconds,note\n";
  for (const auto& r : result.rows) {
    out << to_string(r.strategy) << ',' << to_string(r.classifier) << ',' << format_double(r.train_ratio) << ','
        << r.seed << ',' << to_string(r.status) << ',' << number_or_empty(r.accuracy) << ','
        << number_or_empty(r.weighted_f1) << ',' << r.train_size << ',' << r.test_size << ','
        << number_or_empty(r.train_imbalance_ratio) << ',' << format_double(r.runtime_seconds) << ','
        << escape_csv_cell(r.note, ',') << '\n';
  }
}

void write_aggregate_csv(std::ostream& out, const GridResult& result) {
  out << "strategy,classifier,train_ratio,runs,infeasible,accuracy_mean,accuracy_std,f1_mean,f1_std\n";
  for (const auto& a : result.aggregates) {
    out << to_string(a.strategy) << ',' << to_string(a.classifier) << ',' << format_double(a.train_ratio) << ','
        << a.runs << ',' << a.infeasible << ',' << number_or_empty(a.accuracy_mean) << ','
        << number_or_empty(a.accuracy_std) << ',' << number_or_empty(a.f1_mean) << ','
        << number_or_empty(a.f1_std) << '\n';
  }
}

std::filesystem::path write_outputs(const GridResult& result, const ExperimentConfig& config, const Dataset& dataset) {
  namespace fs = std::filesystem;
  const fs::path& dir = config.output_dir;
  fs::create_directories(dir);
  nlohmann::json artifacts = nlohmann::json::array();
  auto record = [&](const fs::path& path, std::string_view kind) {
    artifacts.push_back({{"path", fs::relative(path, dir).generic_string()}, {"kind", kind}});
  };

  {
    const auto path = dir / "raw.csv";
    auto out = open_output(path);
    write_raw_csv(out, result);
    finish(out, path);
    record(path, "raw");
  }
  {
    const auto path = dir / "aggregate.csv";
    auto out = open_output(path);
    write_aggregate_csv(out, result);
    finish(out, path);
    record(path, "aggregate");
  }
  for (const auto kind : result.classifiers) {
    for (const auto format : {TableFormat::text, TableFormat::markdown}) {
      const auto path =
          dir / ("table_" + std::string(to_string(kind)) + (format == TableFormat::text ? ".txt" : ".md"));
      auto out = open_output(path);
      out << render_table(result, kind, format);
      finish(out, path);
      record(path, format == TableFormat::text ? "table_text" : "table_markdown");
    }
  }
  for (const auto& path : emit_plot_data(result, dir / "plots")) record(path, "plot_data");

  nlohmann::json census = nlohmann::json::object();
  for (std::size_t c = 0; c < dataset.class_count(); ++c) census[dataset.class_names()[c]] = dataset.class_counts()[c];
  const auto limit = upper_limit_fraction(dataset);
  nlohmann::json manifest = {
      {"config", to_json(config)},
      {"config_hash", config_hash(config)},
      {"dataset",
       {{"samples", dataset.sample_count()},
        {"features", dataset.feature_count()},
        {"census", census},
        {"upper_limit", limit.value()},
        {"upper_limit_fraction", std::to_string(limit.numerator) + "/" + std::to_string(limit.denominator)}}},
      {"rows", result.rows.size()},
      {"artifacts", artifacts},
  };
  const auto path = dir / "manifest.json";
  auto out = open_output(path);
  out << manifest.dump(2) << '\n';
  finish(out, path);
  return path;
}

}  // namespace balsplit
