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
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace sfspn {

/// 8x8 substitution table indexed by input byte. The type does not enforce
/// bijectivity so that arbitrary tables can be analyzed; operations that need
/// a permutation check it themselves.
class SBox {
 public:
  using Table = std::array<std::uint8_t, 256>;

  SBox();  // identity
  explicit SBox(const Table& table) : table_(table) {}

  std::uint8_t operator[](std::uint8_t x) const { return table_[x]; }
  const Table& table() const { return table_; }

  bool is_permutation() const;
  /// Inverse table; requires is_permutation().
  SBox inverse() const;

  friend bool operator==(const SBox&, const SBox&) = default;

 private:
  Table table_;
};

/// Reference semifield S-box (row = high nibble).
/// Throws FixtureNotBijective listing duplicated/missing bytes.
SBox load_fixture_sbox();

/// Duplicated and missing values of a table; both empty iff bijective.
struct BijectivityDefect {
  std::vector<std::uint8_t> duplicated;
  std::vector<std::uint8_t> missing;
  bool empty() const { return duplicated.empty() && missing.empty(); }
};
BijectivityDefect find_bijectivity_defect(const SBox& s);

/// The AES S-box, used to validate the analyzers.
SBox aes_sbox();

inline constexpr std::uint32_t kS8Order = 40320;

/// Element of S8 acting on output-bit positions. Position 0 is the most
/// significant bit (component F0); sigma[j] names the source position that
/// lands on position j.
class BitPermutation {
 public:
  BitPermutation();  // identity
  explicit BitPermutation(const std::array<std::uint8_t, 8>& sigma);

  /// From one-line 1-based notation, e.g. {1,3,2,4,6,5,7,8}.
  static BitPermutation from_one_based(const std::array<int, 8>& one_line);

  const std::array<std::uint8_t, 8>& sigma() const { return sigma_; }
  std::uint8_t operator[](int j) const { return sigma_[static_cast<std::size_t>(j)]; }

  BitPermutation inverse() const;
  std::uint8_t apply_to_byte(std::uint8_t value) const;

  friend bool operator==(const BitPermutation&, const BitPermutation&) = default;

 private:
  std::array<std::uint8_t, 8> sigma_;
};

/// compose(p, q)[j] = p[q[j]]. This is the permutation with
/// apply(apply(s, p), q) == apply(s, compose(p, q)).
BitPermutation compose(const BitPermutation& p, const BitPermutation& q);

SBox apply_bit_permutation(const SBox& s, const BitPermutation& p);

/// rank-th permutation of {0..7} in lexicographic order (factorial number
/// system). Throws RankOutOfRange unless rank < 40320.
BitPermutation unrank_permutation(std::uint32_t rank);
std::uint32_t rank_permutation(const BitPermutation& p);

/// Seed box plus a list of S8 ranks; member i is the seed with permutation
/// indices[i] applied. Members are derived on access.
class SBoxFamily {
 public:
  SBoxFamily(SBox seed, std::vector<std::uint32_t> indices);

  const SBox& seed() const { return seed_; }
  const std::vector<std::uint32_t>& indices() const { return indices_; }
  std::size_t size() const { return indices_.size(); }

  SBox box(std::size_t i) const;
  std::vector<SBox> materialize() const;

 private:
  SBox seed_;
  std::vector<std::uint32_t> indices_;
};

/// Family for ranks 0..count-1. Requires 1 <= count <= 40320 and a bijective
/// seed.
SBoxFamily generate_family(const SBox& seed, std::uint32_t count);

// Text format: 16 lines of 16 lowercase two-digit hex bytes, single spaces.
void write_sbox(std::ostream& out, const SBox& s);
SBox read_sbox(std::istream& in);
void write_sbox_file(const SBox& s, const std::filesystem::path& path);
SBox read_sbox_file(const std::filesystem::path& path);

/// Family file: blocks of "seed-rank: <n>" followed by a table, separated by
/// "---" lines.
struct RankedSBox {
  std::uint32_t rank;
  SBox box;
};
void write_family(std::ostream& out, const SBoxFamily& family);
std::vector<RankedSBox> read_family(std::istream& in);
void write_family_file(const SBoxFamily& family, const std::filesystem::path& path);
std::vector<RankedSBox> read_family_file(const std::filesystem::path& path);

}  // namespace sfspn
