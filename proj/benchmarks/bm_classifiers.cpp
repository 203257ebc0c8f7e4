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

#include <benchmark/benchmark.h>

#include <vector>

#include "balsplit/dataset.hpp"
#include "balsplit/forest.hpp"
#include "balsplit/harness.hpp"
#include "balsplit/knn.hpp"
#include "balsplit/metrics.hpp"
#include "balsplit/split.hpp"

namespace {

struct Fixture {
  balsplit::FeatureMatrix train_x, test_x;
  std::vector<balsplit::Label> train_y, test_y;
};

const Fixture& fixture() {
  static const Fixture f = [] {
    const auto ds = balsplit::synthesize_dataset(balsplit::DatasetSource::customer_census(), 10, 0);
    const auto r = balsplit::split(ds, {balsplit::Strategy::balanced, 0.8, 0});
    Fixture out;
    out.train_x = ds.features().select_rows(r.train_indices);
    out.test_x = ds.features().select_rows(r.test_indices);
    for (const auto i : r.train_indices) out.train_y.push_back(ds.labels()[i]);
    for (const auto i : r.test_indices) out.test_y.push_back(ds.labels()[i]);
    return out;
  }();
  return f;
}

void BM_KnnPredict(benchmark::State& state) {
  const auto& f = fixture();
  const auto model = balsplit::knn_fit(f.train_x, f.train_y, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto pred = balsplit::knn_predict(model, f.test_x);
    benchmark::DoNotOptimize(pred.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.test_x.rows()));
}
BENCHMARK(BM_KnnPredict)->Arg(1)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_ForestFit(benchmark::State& state) {
  const auto& f = fixture();
  balsplit::ForestParams params;
  params.tree_count = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    auto model = balsplit::forest_fit(f.train_x, f.train_y, params);
    benchmark::DoNotOptimize(model.trees.data());
  }
}
BENCHMARK(BM_ForestFit)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_Evaluate(benchmark::State& state) {
  const auto& f = fixture();
  std::vector<balsplit::Label> pred(f.test_y.rbegin(), f.test_y.rend());
  for (auto _ : state) benchmark::DoNotOptimize(balsplit::evaluate(f.test_y, pred, 4).weighted_f1);
}
BENCHMARK(BM_Evaluate);

}  // namespace
