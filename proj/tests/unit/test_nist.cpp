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

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <string>

#include <nlohmann/json.hpp>

#include "oracles.hpp"
#include "sfspn/chaos.hpp"
#include "sfspn/error.hpp"
#include "sfspn/nist.hpp"

using namespace sfspn;

namespace {

// First 100 binary digits of pi, the worked example of SP 800-22.
const std::string kPi100 =
    "1100100100001111110110101010001000100001011010001100001000110100110001001100011001100010100010111000";

// Worked example for the longest-run test (n = 128, M = 8).
const std::string kLongRun128 =
    "11001100000101010110110001001100111000000000001001001101010100010001001111010110100000001101011111001100111001"
    "101101100010110010";

BitStream from_string(const std::string& s) {
  BitStream b;
  for (char c : s) b.bits.push_back(c == '1');
  return b;
}

BitStream random_stream(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  BitStream b;
  for (std::size_t i = 0; i < n; ++i) b.bits.push_back(static_cast<std::uint8_t>(rng() & 1u));
  return b;
}

}  // namespace

TEST(NistReference, Monobit) { EXPECT_NEAR(frequency_monobit(from_string(kPi100)).p_value, 0.109599, 1e-6); }

TEST(NistReference, BlockFrequency) {
  EXPECT_NEAR(block_frequency(from_string(kPi100), 10).p_value, 0.706438, 1e-6);
}

TEST(NistReference, Runs) { EXPECT_NEAR(runs(from_string(kPi100)).p_value, 0.500798, 1e-6); }

TEST(NistReference, CumulativeSums) {
  EXPECT_NEAR(cumulative_sums(from_string(kPi100), true).p_value, 0.219194, 1e-6);
  EXPECT_NEAR(cumulative_sums(from_string(kPi100), false).p_value, 0.114866, 1e-6);
}

TEST(NistReference, ApproximateEntropy) {
  EXPECT_NEAR(approximate_entropy(from_string(kPi100), 2).p_value, 0.235301, 1e-6);
}

// A direct DFT of the pi digits puts 48 of the 50 peaks below the threshold,
// not the 46 quoted in SP 800-22.
TEST(NistReference, Spectral) {
  const double d = (48.0 - 47.5) / std::sqrt(100 * 0.95 * 0.05 / 4.0);
  EXPECT_NEAR(dft_spectral(from_string(kPi100)).p_value, std::erfc(d / std::sqrt(2.0)), 1e-12);
}

// SP 800-22 category probabilities are rounded to four digits; ours are
// exact, hence the looser tolerance.
TEST(NistReference, LongestRun) {
  EXPECT_NEAR(longest_run_of_ones(from_string(kLongRun128)).p_value, 0.180609, 2e-3);
}

TEST(Monobit, MatchesIndependentFormula) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto s = random_stream(1000 + 37 * seed, seed);
    // Bias some streams so the p-values spread out.
    for (std::size_t i = 0; i < seed * 5; ++i) s.bits[i] = 1;
    EXPECT_NEAR(frequency_monobit(s).p_value, oracle::monobit_p(s.bits), 1e-9);
  }
}

TEST(MatrixRank, Gf2Rank) {
  EXPECT_EQ(gf2_rank({0x80, 0x40, 0x20, 0x10, 0x08, 0x04, 0x02, 0x01}, 8), 8);
  EXPECT_EQ(gf2_rank(std::vector<std::uint64_t>(8, 0), 8), 0);
  EXPECT_EQ(gf2_rank({0xFF, 0xFF, 0x0F, 0xF0}, 8), 2);
  EXPECT_EQ(gf2_rank({0b011, 0b110, 0b101}, 3), 2);
}

TEST(MatrixRank, SkippedBelow38Matrices) {
  EXPECT_EQ(binary_matrix_rank(random_stream(37 * 64, 1)).outcome, TestOutcome::Skipped);
  EXPECT_NE(binary_matrix_rank(random_stream(38 * 64, 1)).outcome, TestOutcome::Skipped);
}

TEST(BitRules, Conversions) {
  const std::vector<double> xs{0.1, 0.9, 0.4, 0.6};
  EXPECT_EQ(bits_from_reals(xs, BitRule::Threshold).bits, (std::vector<std::uint8_t>{0, 1, 0, 1}));
  EXPECT_EQ(bits_from_reals(std::vector<double>{0.5}, BitRule::BitExpansion).bits,
            (std::vector<std::uint8_t>{1, 0, 0, 0, 0, 0, 0, 0}));
  EXPECT_EQ(bits_from_reals(std::vector<double>{0.123, 0.124}, BitRule::DigitParity, 3).bits,
            (std::vector<std::uint8_t>{1, 0}));
  EXPECT_EQ(bits_from_bytes(std::vector<std::uint8_t>{0xA5}).bits, (std::vector<std::uint8_t>{1, 0, 1, 0, 0, 1, 0, 1}));
  EXPECT_THROW(bits_from_reals(std::vector<double>{}, BitRule::Threshold), Error);
}

TEST(Subset, LengthRules) {
  EXPECT_EQ(approximate_entropy_block_length(100000), 10);
  EXPECT_EQ(approximate_entropy_block_length(100), 2);
  try {
    run_nist_subset(random_stream(99, 0));
    FAIL() << "expected TooShort";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::TooShort);
  }
}

TEST(Subset, ReportsEveryTest) {
  const auto reports = run_nist_subset(random_stream(20000, 5));
  ASSERT_EQ(reports.size(), 14u);
  EXPECT_TRUE(all_executed_passed(reports));
  nlohmann::json j = reports.front();
  EXPECT_EQ(j["test_name"], "frequency_monobit");
  EXPECT_TRUE(j.contains("p_value"));
}

TEST(Subset, ConstantStreamFails) {
  BitStream ones;
  ones.bits.assign(5000, 1);
  EXPECT_FALSE(all_executed_passed(run_nist_subset(ones)));
}

TEST(Subset, LogisticDigitParityPasses) {
  const auto xs = logistic_sequence({0.5, 0.2, 4.3}, 100000);
  const auto reports = run_nist_subset(bits_from_reals(xs, BitRule::DigitParity));
  for (const auto& r : reports) EXPECT_TRUE(r.passed()) << r.test_name << " p=" << r.p_value;
}

// Median thresholding keeps the one-step correlation of the orbit, which the
// runs test detects.
TEST(Subset, LogisticThresholdIsCorrelated) {
  const auto xs = logistic_sequence({0.5, 0.2, 4.3}, 100000);
  EXPECT_FALSE(runs(bits_from_reals(xs, BitRule::Threshold)).passed());
}
