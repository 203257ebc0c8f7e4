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

#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <sstream>

#if __has_include(<CLI/CLI.hpp>)
#include <CLI/CLI.hpp>
#else
#include <CLI11.hpp>
#endif

#include "balsplit/csv.hpp"
#include "balsplit/dataset.hpp"
#include "balsplit/harness.hpp"
#include "balsplit/report.hpp"
#include "balsplit/split.hpp"

namespace balsplit::cli {
namespace {

namespace fs = std::filesystem;

struct PreprocessFlags {
  std::string target;
  std::vector<std::string> categorical;
  std::vector<std::string> impute;
  std::vector<std::string> drop;
  std::string delimiter = ",";
};

void add_preprocess_flags(CLI::App* cmd, PreprocessFlags& flags) {
  cmd->add_option("--target", flags.target,
                  "Label column (default: Segmentation for the customer schema, else the last column)");
  cmd->add_option("--categorical", flags.categorical,
                  "Columns to label-encode (default: customer schema, else every non-numeric column)")
      ->delimiter(',');
  cmd->add_option("--impute", flags.impute, "Columns whose missing cells take the column mode")->delimiter(',');
  cmd->add_option("--drop", flags.drop, "Columns to leave out of the feature matrix")->delimiter(',');
  cmd->add_option("--delimiter", flags.delimiter, "CSV field delimiter")->capture_default_str();
}

CsvOptions csv_options(const PreprocessFlags& flags) {
  if (flags.delimiter.size() != 1) throw InvalidArgument("--delimiter must be a single character");
  return CsvOptions{flags.delimiter[0]};
}

bool looks_numeric(std::string_view cell) {
  while (!cell.empty() && (cell.front() == ' ' || cell.front() == '\t')) cell.remove_prefix(1);
  while (!cell.empty() && (cell.back() == ' ' || cell.back() == '\t')) cell.remove_suffix(1);
  if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  return ec == std::errc{} && ptr == cell.data() + cell.size();
}

// Explicit flags win. Without --target, a header containing "Segmentation"
// selects the customer schema; otherwise the last column is the target and
// every column holding a non-numeric cell is label-encoded.
PreprocessSpec resolve_preprocess(const CsvTable& table, const PreprocessFlags& flags) {
  PreprocessSpec spec;
  const bool customer = flags.target.empty() && table.column_index("Segmentation").has_value();
  if (customer) {
    const auto schema = PreprocessSpec::customer_segmentation();
    spec.target_column = schema.target_column;
    for (const auto& c : schema.categorical_columns) {
      if (table.column_index(c)) spec.categorical_columns.push_back(c);
    }
    for (const auto& c : schema.impute_mode_columns) {
      if (table.column_index(c)) spec.impute_mode_columns.push_back(c);
    }
  } else {
    if (table.header.empty()) throw InvalidArgument("csv header is empty");
    spec.target_column = flags.target.empty() ? table.header.back() : flags.target;
  }
  spec.drop_columns = flags.drop;
  if (!flags.impute.empty()) spec.impute_mode_columns = flags.impute;
  if (!flags.categorical.empty()) {
    spec.categorical_columns = flags.categorical;
  } else if (!customer) {
    for (std::size_t j = 0; j < table.header.size(); ++j) {
      const auto& name = table.header[j];
      if (name == spec.target_column || std::find(spec.drop_columns.begin(), spec.drop_columns.end(), name) !=
                                            spec.drop_columns.end()) {
        continue;
      }
      const bool textual = std::any_of(table.rows.begin(), table.rows.end(), [&](const auto& row) {
        return !is_missing_cell(row[j]) && !looks_numeric(row[j]);
      });
      if (textual) spec.categorical_columns.push_back(name);
    }
  }
  return spec;
}

// ---- split -----------------------------------------------------------------

struct SplitFlags {
  std::string csv;
  PreprocessFlags preprocess;
  std::string strategy = "balanced";
  double train_ratio = 0.0;
  std::uint64_t seed = 0;
  std::string out = ".";
  bool indices_only = false;
};

int cmd_split(const SplitFlags& flags, std::ostream& out, std::ostream& err) {
  const auto options = csv_options(flags.preprocess);
  const SplitConfig config{parse_strategy(flags.strategy), flags.train_ratio, flags.seed};
  config.validate();
  const CsvTable table = read_csv(flags.csv, options);
  const Dataset dataset = build_dataset(table, resolve_preprocess(table, flags.preprocess));
  const SplitResult result = split(dataset, config);

  fs::create_directories(flags.out);
  if (flags.indices_only) {
    const auto path = fs::path(flags.out) / "split.json";
    std::ofstream file(path);
    if (!file) throw IoError("cannot write " + path.string());
    file << to_json(result, dataset.class_names()).dump(2) << '\n';
    if (!file) throw IoError("write failed: " + path.string());
    err << "wrote " << path.string() << '\n';
  } else {
    const auto train_path = fs::path(flags.out) / "train.csv";
    const auto test_path = fs::path(flags.out) / "test.csv";
    write_csv(train_path, table, result.train_indices, options);
    write_csv(test_path, table, result.test_indices, options);
    err << "wrote " << train_path.string() << " and " << test_path.string() << '\n';
  }
  out << format_summary(result, dataset.class_names());
  return kExitOk;
}

// ---- limit -----------------------------------------------------------------

struct LimitFlags {
  std::string csv;
  PreprocessFlags preprocess;
};

std::string fixed(double v, int digits) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << v;
  return s.str();
}

int cmd_limit(const LimitFlags& flags, std::ostream& out, std::ostream&) {
  const CsvTable table = read_csv(flags.csv, csv_options(flags.preprocess));
  const Dataset dataset = build_dataset(table, resolve_preprocess(table, flags.preprocess));
  const auto m = dataset.sample_count();
  const auto counts = dataset.class_counts();

  out << "samples: " << m << '\n' << "classes: " << dataset.class_count() << '\n' << "class\tcount\tshare\n";
  for (std::size_t c = 0; c < dataset.class_count(); ++c) {
    out << dataset.class_names()[c] << '\t' << counts[c] << '\t'
        << fixed(static_cast<double>(counts[c]) / static_cast<double>(m), 4) << '\n';
  }
  const Label minority = dataset.minority_class();
  const double minority_ratio = static_cast<double>(counts[minority]) / static_cast<double>(m);
  out << "minority class: " << dataset.class_names()[minority] << " (" << counts[minority]
      << " samples, ratio " << fixed(minority_ratio, 4) << " ~ " << fixed(minority_ratio, 2) << ")\n";

  const auto limit = upper_limit_fraction(dataset);
  const auto reduced = limit.reduced();
  out << "upper limit: " << dataset.class_count() << " * " << counts[minority] << " / " << m << " = "
      << reduced.numerator << '/' << reduced.denominator << " = " << fixed(limit.value(), 6) << " ~ "
      << fixed(limit.value(), 3) << " ~ " << fixed(limit.value(), 2) << '\n';
  return kExitOk;
}

// ---- bench -----------------------------------------------------------------

struct BenchFlags {
  std::string dataset;
  PreprocessFlags preprocess;
  std::string census = "A=1972,B=1858,C=1970,D=2268";
  std::size_t dim = 2;
  std::uint64_t data_seed = 0;
  std::vector<std::string> strategies = {"random", "stratified", "balanced"};
  std::vector<double> ratios = default_train_ratios();
  std::vector<std::string> classifiers = {"knn", "forest"};
  std::vector<std::uint64_t> seeds;
  std::size_t seed_count = 10;
  std::size_t knn_k = 5;
  std::size_t forest_trees = 100;
  std::size_t forest_max_features = 0;
  std::size_t forest_min_samples_split = 2;
  std::uint64_t forest_seed = 0;
  bool no_bootstrap = false;
  unsigned threads = 0;
  std::string out = "results";
  bool markdown = false;
};

int cmd_bench(const BenchFlags& flags, std::ostream& out, std::ostream& err) {
  ExperimentConfig config;
  if (!flags.dataset.empty()) {
    const auto options = csv_options(flags.preprocess);
    const CsvTable header_probe = read_csv(flags.dataset, options);
    config.source.csv = flags.dataset;
    config.source.csv_options = options;
    config.source.preprocess = resolve_preprocess(header_probe, flags.preprocess);
  } else {
    config.source.census = parse_census(flags.census);
    config.source.synthetic_dim = flags.dim;
    config.source.synthetic_seed = flags.data_seed;
  }
  config.strategies.clear();
  for (const auto& s : flags.strategies) config.strategies.push_back(parse_strategy(s));
  config.classifiers.clear();
  for (const auto& c : flags.classifiers) config.classifiers.push_back(parse_classifier(c));
  config.train_ratios = flags.ratios;
  if (!flags.seeds.empty()) {
    config.seeds = flags.seeds;
  } else {
    config.seeds.resize(flags.seed_count);
    std::iota(config.seeds.begin(), config.seeds.end(), std::uint64_t{0});
  }
  config.knn.k = flags.knn_k;
  config.forest.tree_count = flags.forest_trees;
  config.forest.max_features = flags.forest_max_features;
  config.forest.min_samples_split = flags.forest_min_samples_split;
  config.forest.seed = flags.forest_seed;
  config.forest.bootstrap = !flags.no_bootstrap;
  config.threads = flags.threads;
  config.output_dir = flags.out;
  config.validate();

  const Dataset dataset = load_source(config.source);
  err << "running " << config.strategies.size() * config.train_ratios.size() * config.seeds.size()
      << " split cells on " << dataset.sample_count() << " samples (upper limit "
      << fixed(upper_limit_train_ratio(dataset), 4) << ")\n";
  const GridResult result = run_grid(dataset, config);
  const auto manifest = write_outputs(result, config, dataset);

  const auto format = flags.markdown ? TableFormat::markdown : TableFormat::text;
  for (std::size_t i = 0; i < result.classifiers.size(); ++i) {
    if (i) out << '\n';
    out << render_table(result, result.classifiers[i], format);
  }
  out << "\nresults: " << manifest.parent_path().string() << " (manifest " << manifest.filename().string()
      << ", config hash " << config_hash(config) << ")\n";
  return kExitOk;
}

// ---- synth -----------------------------------------------------------------

struct SynthFlags {
  std::string census;
  std::size_t dim = 2;
  std::uint64_t seed = 0;
  std::string out = "synthetic.csv";
};

int cmd_synth(const SynthFlags& flags, std::ostream& out, std::ostream&) {
  const Dataset dataset = synthesize_dataset(parse_census(flags.census), flags.dim, flags.seed);
  const CsvTable table = to_csv_table(dataset);
  std::vector<std::size_t> rows(table.rows.size());
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  const fs::path path = flags.out;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  write_csv(path, table, rows);
  out << "wrote " << dataset.sample_count() << " rows x " << dataset.feature_count() << " features to "
      << path.string() << '\n';
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Random, stratified and balanced train/test splitting for imbalanced datasets", "balsplit"};
  app.require_subcommand(1, 1);

  SplitFlags split_flags;
  auto* split_cmd = app.add_subcommand("split", "Split a CSV into train.csv/test.csv (or split.json)");
  split_cmd->add_option("csv", split_flags.csv, "Input CSV with a header row")->required();
  add_preprocess_flags(split_cmd, split_flags.preprocess);
  split_cmd->add_option("--strategy", split_flags.strategy, "random, stratified or balanced")
      ->capture_default_str();
  split_cmd->add_option("--train-ratio", split_flags.train_ratio, "Fraction of samples for training, in (0, 1)")
      ->required();
  split_cmd->add_option("--seed", split_flags.seed, "Sampling seed")->capture_default_str();
  split_cmd->add_option("--out", split_flags.out, "Output directory")->capture_default_str();
  split_cmd->add_flag("--indices-only", split_flags.indices_only, "Write split.json with index lists instead of CSVs");

  LimitFlags limit_flags;
  auto* limit_cmd = app.add_subcommand("limit", "Print the class census and the balanced-split upper limit");
  limit_cmd->add_option("csv", limit_flags.csv, "Input CSV with a header row")->required();
  add_preprocess_flags(limit_cmd, limit_flags.preprocess);

  BenchFlags bench;
  auto* bench_cmd = app.add_subcommand("bench", "Run the strategy x train-ratio x classifier grid");
  // Run-config files are read by the root app; bench keys live in a [bench]
  // section and use the long flag names.
  app.set_config("--config", "", "TOML run-config file with a [bench] section");
  app.allow_config_extras(CLI::config_extras_mode::error);
  bench_cmd->fallthrough();
  bench_cmd->add_option("--dataset", bench.dataset, "CSV to evaluate (default: synthetic census)");
  add_preprocess_flags(bench_cmd, bench.preprocess);
  bench_cmd->add_option("--census", bench.census, "Synthetic census NAME=COUNT,...")->capture_default_str();
  bench_cmd->add_option("--dim", bench.dim, "Synthetic feature dimension")->capture_default_str();
  bench_cmd->add_option("--data-seed", bench.data_seed, "Synthetic data seed")->capture_default_str();
  bench_cmd->add_option("--strategies", bench.strategies, "Strategies to compare")->delimiter(',');
  bench_cmd->add_option("--ratios", bench.ratios, "Train ratios")->delimiter(',');
  bench_cmd->add_option("--classifiers", bench.classifiers, "knn and/or forest")->delimiter(',');
  bench_cmd->add_option("--seeds", bench.seeds, "Explicit seed list (overrides --seed-count)")->delimiter(',');
  bench_cmd->add_option("--seed-count", bench.seed_count, "Use seeds 0..N-1")->capture_default_str();
  bench_cmd->add_option("--knn-k", bench.knn_k, "Neighbours for KNN")->capture_default_str();
  bench_cmd->add_option("--forest-trees", bench.forest_trees, "Trees per forest")->capture_default_str();
  bench_cmd->add_option("--forest-max-features", bench.forest_max_features, "Features per split (0 = sqrt)")
      ->capture_default_str();
  bench_cmd->add_option("--forest-min-samples-split", bench.forest_min_samples_split, "Minimum rows to split")
      ->capture_default_str();
  bench_cmd->add_option("--forest-seed", bench.forest_seed, "Base seed for forest randomness")->capture_default_str();
  bench_cmd->add_flag("--no-bootstrap", bench.no_bootstrap, "Fit every tree on the full training set");
  bench_cmd->add_option("--threads", bench.threads, "Worker threads (0 = all cores)")->capture_default_str();
  bench_cmd->add_option("--out", bench.out, "Output directory")->capture_default_str();
  bench_cmd->add_flag("--markdown", bench.markdown, "Print tables as Markdown");

  SynthFlags synth;
  auto* synth_cmd = app.add_subcommand("synth", "Write a synthetic Gaussian-cluster dataset");
  synth_cmd->add_option("--census", synth.census, "Class sizes, e.g. A=800,B=1000")->required();
  synth_cmd->add_option("--dim", synth.dim, "Feature dimension")->capture_default_str();
  synth_cmd->add_option("--seed", synth.seed, "Generator seed")->capture_default_str();
  synth_cmd->add_option("--out", synth.out, "Output CSV path")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitError;
  }

  try {
    if (split_cmd->parsed()) return cmd_split(split_flags, out, err);
    if (limit_cmd->parsed()) return cmd_limit(limit_flags, out, err);
    if (bench_cmd->parsed()) return cmd_bench(bench, out, err);
    if (synth_cmd->parsed()) return cmd_synth(synth, out, err);
  } catch (const InfeasibleBalancedSplit& e) {
    err << "error: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace balsplit::cli
