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

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace sfspn {

struct BitStream {
  std::vector<std::uint8_t> bits;  // each entry 0 or 1
  std::string origin;

  std::size_t size() const { return bits.size(); }
};

/// Real-to-bit conversion rules.
///  - Threshold: 1 iff x >= median of the sequence.
///  - BitExpansion: the 8 bits of clamp(floor(x*256), 0, 255), MSB first.
///  - DigitParity: floor(x * 10^digits) mod 2, one bit per sample.
enum class BitRule { Threshold, BitExpansion, DigitParity };

inline constexpr int kDefaultParityDigits = 8;

BitStream bits_from_reals(std::span<const double> xs, BitRule rule, int digits = kDefaultParityDigits);

/// Unpacks bytes MSB first.
BitStream bits_from_bytes(std::span<const std::uint8_t> bytes, std::string origin = "bytes");

inline constexpr double kDefaultSignificance = 0.01;

enum class TestOutcome { Passed, Failed, Skipped };

struct TestReport {
  std::string test_name;
  std::map<std::string, double> parameters;
  double p_value = 0.0;  // meaningless when skipped
  TestOutcome outcome = TestOutcome::Skipped;
  std::string note;  // reason for a skip

  bool passed() const { return outcome == TestOutcome::Passed; }
};

// Individual tests. Each returns Skipped when the stream is below the test's
// minimum length.
TestReport frequency_monobit(const BitStream& s, double alpha = kDefaultSignificance);
TestReport block_frequency(const BitStream& s, int block_size, double alpha = kDefaultSignificance);
TestReport runs(const BitStream& s, double alpha = kDefaultSignificance);
TestReport longest_run_of_ones(const BitStream& s, double alpha = kDefaultSignificance);
TestReport binary_matrix_rank(const BitStream& s, int rows = 8, int cols = 8,
                              double alpha = kDefaultSignificance);
TestReport dft_spectral(const BitStream& s, double alpha = kDefaultSignificance);
TestReport approximate_entropy(const BitStream& s, int block_length, double alpha = kDefaultSignificance);
TestReport cumulative_sums(const BitStream& s, bool forward, double alpha = kDefaultSignificance);

/// Largest block length m <= 10 with m < floor(log2 n) - 5 (at least 2).
int approximate_entropy_block_length(std::size_t n);

/// Rank of a GF(2) matrix given as row bitmasks (up to 64 columns).
int gf2_rank(std::vector<std::uint64_t> rows, int cols);

/// Frequency, block frequency for block sizes 3..8, runs, longest run (M=8),
/// 8x8 matrix rank, spectral, approximate entropy and cumulative sums in both
/// directions. Throws TooShort below 100 bits.
std::vector<TestReport> run_nist_subset(const BitStream& s, double alpha = kDefaultSignificance);

/// True iff no executed test failed.
bool all_executed_passed(const std::vector<TestReport>& reports);

void to_json(nlohmann::json& j, const TestReport& r);

}  // namespace sfspn
