/* Copyright 2026 The SFSPN Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include <benchmark/benchmark.h>

#include "sfspn/chaos.hpp"
#include "sfspn/nist.hpp"

using namespace sfspn;

static void BM_Logistic(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(logistic_sequence({0.5, 0.2, 4.5}, 100000));
  state.SetItemsProcessed(state.iterations() * 100000);
}
BENCHMARK(BM_Logistic)->Unit(benchmark::kMillisecond);

static void BM_TdErcs(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(tdercs_sequence({0.5, 1.0, 0.5, 3}, 100000));
  state.SetItemsProcessed(state.iterations() * 100000);
}
BENCHMARK(BM_TdErcs)->Unit(benchmark::kMillisecond);

static void BM_Classify(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(classify_logistic({0.5, 0.2, 4.3}));
}
BENCHMARK(BM_Classify);

static void BM_NistSubset(benchmark::State& state) {
  const auto bits = bits_from_reals(logistic_sequence({0.5, 0.2, 4.3}, 100000), BitRule::DigitParity);
  for (auto _ : state) benchmark::DoNotOptimize(run_nist_subset(bits));
}
BENCHMARK(BM_NistSubset)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
