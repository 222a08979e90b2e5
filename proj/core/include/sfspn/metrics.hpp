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

#pragma once

#include <array>
#include <bitset>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "sfspn/sbox.hpp"

namespace sfspn {

/// Truth table of one Boolean function GF(2)^8 -> GF(2).
struct ComponentFunction {
  std::bitset<256> truth_table;

  int weight() const { return static_cast<int>(truth_table.count()); }
};

/// x -> <S(x), mask>; a nonzero mask selects a linear combination of the
/// output bits.
ComponentFunction component_combination(const SBox& s, std::uint8_t output_mask);

/// Output bit j, with j = 0 the most significant bit.
ComponentFunction output_bit(const SBox& s, int j);

/// Walsh-Hadamard spectrum W(w) = sum_x (-1)^(f(x) xor <x,w>).
std::array<int, 256> walsh_spectrum(const ComponentFunction& f);

int nonlinearity(const ComponentFunction& f);

/// Minimum nonlinearity over the 255 nonzero component combinations.
int nonlinearity(const SBox& s);

/// Distinct values and every nonzero combination balanced; both views of
/// bijectivity must agree.
bool is_bijective(const SBox& s);

/// SAC matrix entry (i, j): fraction of inputs x for which flipping input bit
/// i flips output bit j. Bit indices count from the most significant bit.
struct SacResult {
  std::array<std::array<double, 8>, 8> matrix{};
  double average = 0.0;
  double max_offset = 0.0;
};
SacResult sac(const SBox& s);

/// Fraction of inputs for which flipping input bit i changes f.
double sac_of_function(const ComponentFunction& f, int input_bit);

struct BicResult {
  int nonlinearity = 0;
  double sac = 0.0;
};
/// Over the 28 pairs j < k of output bits, f_j xor f_k.
BicResult bic(const SBox& s);

struct DifferenceDistributionTable {
  // counts[dx][dy]
  std::vector<std::array<std::uint16_t, 256>> counts;
};
struct DdtResult {
  DifferenceDistributionTable table;
  double dp = 0.0;
};
/// dp is the largest count over rows dx != 0, divided by 256.
DdtResult ddt_and_dp(const SBox& s);

struct LinearApproximationTable {
  // biases[input_mask][output_mask] = #{x : <x,in> = <S(x),out>} - 128
  std::vector<std::array<std::int16_t, 256>> biases;
};
struct LatResult {
  LinearApproximationTable table;
  double lp = 0.0;
};
/// lp is max |bias| / 256 over all input masks and nonzero output masks.
LatResult lat_and_lp(const SBox& s);

struct MetricsReport {
  int nonlinearity = 0;
  double sac_average = 0.0;
  double sac_max_offset = 0.0;
  int bic_nonlinearity = 0;
  double bic_sac = 0.0;
  double dp = 0.0;
  double lp = 0.0;
  bool bijective = false;
  std::optional<std::uint32_t> rank;

  // Ignores rank.
  bool same_metrics(const MetricsReport& other) const;
};

MetricsReport evaluate(const SBox& s);

struct BatchSummary {
  std::size_t count = 0;
  double max_lp_avg = 0.0;
  double max_dp_avg = 0.0;
  double log2_max_lp_avg = 0.0;
  double log2_max_dp_avg = 0.0;
};

struct BatchResult {
  std::vector<MetricsReport> reports;
  BatchSummary summary;
};

/// Evaluates every member (in parallel) and averages the per-box maxima.
BatchResult batch_evaluate(const SBoxFamily& family);
BatchResult batch_evaluate(const std::vector<RankedSBox>& boxes);

void to_json(nlohmann::json& j, const MetricsReport& r);
void to_json(nlohmann::json& j, const BatchSummary& s);
void to_json(nlohmann::json& j, const BatchResult& b);

void write_metrics_csv(std::ostream& out, const std::vector<MetricsReport>& reports);

}  // namespace sfspn
