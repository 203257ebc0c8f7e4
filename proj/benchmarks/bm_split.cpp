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

#include "balsplit/dataset.hpp"
#include "balsplit/harness.hpp"
#include "balsplit/split.hpp"

namespace {

using balsplit::Strategy;

const balsplit::Dataset& customer_like() {
  static const auto ds = balsplit::synthesize_dataset(balsplit::DatasetSource::customer_census(), 10, 0);
  return ds;
}

void BM_Split(benchmark::State& state) {
  const auto strategy = static_cast<Strategy>(state.range(0));
  const auto& ds = customer_like();
  std::uint64_t seed = 0;
  for (auto _ : state) {
    auto result = balsplit::split(ds, {strategy, 0.8, seed++});
    benchmark::DoNotOptimize(result.train_indices.data());
  }
  state.SetLabel(std::string(balsplit::to_string(strategy)));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(ds.sample_count()));
}
BENCHMARK(BM_Split)->Arg(0)->Arg(1)->Arg(2);

void BM_UpperLimit(benchmark::State& state) {
  const auto& ds = customer_like();
  for (auto _ : state) benchmark::DoNotOptimize(balsplit::upper_limit_train_ratio(ds));
}
BENCHMARK(BM_UpperLimit);

}  // namespace
