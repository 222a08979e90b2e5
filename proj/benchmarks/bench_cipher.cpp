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

#include <random>

#include "sfspn/cipher.hpp"
#include "sfspn/sbox.hpp"

using namespace sfspn;

namespace {

CipherKeyBundle keys() {
  CipherKeyBundle k;
  k.k1 = Key128::from_hex("2b7e151628aed2a6abf7158809cf4f3c");
  k.k2 = {0.5, 0.2, 4.5};
  k.k3 = {0.5, 1.0, 0.5, 3};
  return k;
}

std::vector<std::uint8_t> message(std::size_t n) {
  std::mt19937_64 rng(1);
  std::vector<std::uint8_t> v(n);
  for (auto& b : v) b = static_cast<std::uint8_t>(rng());
  return v;
}

}  // namespace

static void BM_Encrypt(benchmark::State& state) {
  const auto family = generate_family(load_fixture_sbox(), 256);
  const auto pt = message(static_cast<std::size_t>(state.range(0)));
  const auto k = keys();
  for (auto _ : state) benchmark::DoNotOptimize(encrypt(pt, k, family));
  state.SetBytesProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Encrypt)->Arg(1024)->Arg(65536)->Unit(benchmark::kMillisecond);

static void BM_Decrypt(benchmark::State& state) {
  const auto family = generate_family(load_fixture_sbox(), 256);
  const auto k = keys();
  const auto ct = encrypt(message(static_cast<std::size_t>(state.range(0))), k, family);
  for (auto _ : state) benchmark::DoNotOptimize(decrypt(ct, k, family));
  state.SetBytesProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Decrypt)->Arg(1024)->Arg(65536)->Unit(benchmark::kMillisecond);

static void BM_DeriveStreams(benchmark::State& state) {
  const auto k = keys();
  for (auto _ : state) benchmark::DoNotOptimize(derive_streams(k, 4096, kDefaultRounds, 256));
}
BENCHMARK(BM_DeriveStreams)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
