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

#include "sfspn/metrics.hpp"
#include "sfspn/sbox.hpp"

using namespace sfspn;

static void BM_Nonlinearity(benchmark::State& state) {
  const auto s = load_fixture_sbox();
  for (auto _ : state) benchmark::DoNotOptimize(nonlinearity(s));
}
BENCHMARK(BM_Nonlinearity);

static void BM_Sac(benchmark::State& state) {
  const auto s = load_fixture_sbox();
  for (auto _ : state) benchmark::DoNotOptimize(sac(s));
}
BENCHMARK(BM_Sac);

static void BM_Bic(benchmark::State& state) {
  const auto s = load_fixture_sbox();
  for (auto _ : state) benchmark::DoNotOptimize(bic(s));
}
BENCHMARK(BM_Bic);

static void BM_Ddt(benchmark::State& state) {
  const auto s = load_fixture_sbox();
  for (auto _ : state) benchmark::DoNotOptimize(ddt_and_dp(s));
}
BENCHMARK(BM_Ddt);

static void BM_Lat(benchmark::State& state) {
  const auto s = load_fixture_sbox();
  for (auto _ : state) benchmark::DoNotOptimize(lat_and_lp(s));
}
BENCHMARK(BM_Lat);

static void BM_BatchEvaluate(benchmark::State& state) {
  const auto family = generate_family(load_fixture_sbox(), static_cast<std::uint32_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(batch_evaluate(family));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BatchEvaluate)->Arg(8)->Arg(64)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
