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
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "sfspn/chaos.hpp"
#include "sfspn/sbox.hpp"

namespace sfspn {

inline constexpr std::size_t kBlockBytes = 16;
inline constexpr int kDefaultRounds = 6;
inline constexpr std::size_t kMinBlocks = 2;

/// Ciphertext size for a plaintext of n bytes: whole blocks, at least
/// kMinBlocks of them.
std::size_t padded_length(std::size_t n);

struct Key128 {
  std::array<std::uint8_t, 16> bytes{};

  /// Exactly 32 hex digits, either case. Throws InvalidKeys otherwise.
  static Key128 from_hex(std::string_view hex);
  std::string to_hex() const;

  friend bool operator==(const Key128&, const Key128&) = default;
};

/// k1 whitening key, k2 logistic seed (shift stream), k3 TD-ERCS seed
/// (selector stream).
struct CipherKeyBundle {
  Key128 k1;
  LogisticParams k2;
  TdErcsParams k3;

  /// Throws InvalidKeys when a seed is out of range or k2 does not give an
  /// aperiodic orbit.
  void validate() const;

  friend bool operator==(const CipherKeyBundle&, const CipherKeyBundle&) = default;
};

// Key file: one "name = value" per line for k1, k2.x0, k2.b, k2.r, k3.x0,
// k3.tan_alpha, k3.mu, k3.m. Blank lines and '#' comments are ignored.
// Syntax errors raise MalformedFile, missing or repeated fields InvalidKeys.
CipherKeyBundle parse_key_file(std::istream& in);
CipherKeyBundle read_key_file(const std::filesystem::path& path);
void write_key_file(std::ostream& out, const CipherKeyBundle& keys);

std::uint8_t rotl_byte(std::uint8_t b, int k);
std::uint8_t rotr_byte(std::uint8_t b, int k);
inline std::uint8_t substitute_byte(std::uint8_t b, const SBox& box) { return box[b]; }

struct Keystream {
  std::vector<std::uint8_t> shifts;      // 0..7, one per byte per round
  std::vector<std::uint32_t> selectors;  // family positions
};

/// 16 * n_blocks * rounds entries of each stream. Shifts come from the k2
/// logistic orbit after the default burn-in, selectors from the k3 TD-ERCS
/// x iterates.
Keystream derive_streams(const CipherKeyBundle& keys, std::size_t n_blocks, int rounds,
                         std::uint32_t family_size);

inline constexpr std::array<char, 8> kContainerMagic{'S', 'F', 'S', 'P', 'N', 'v', '1', '\0'};

struct CiphertextContainer {
  std::uint8_t rounds = kDefaultRounds;
  std::uint64_t original_length = 0;
  std::vector<std::uint8_t> blocks;

  /// magic, rounds byte, original length (little endian), blocks.
  std::vector<std::uint8_t> serialize() const;
  /// Throws MalformedContainer.
  static CiphertextContainer parse(std::span<const std::uint8_t> bytes);

  friend bool operator==(const CiphertextContainer&, const CiphertextContainer&) = default;
};

/// Zero pads to padded_length(). Throws EmptyPlaintext, InvalidKeys (also for
/// rounds outside 1..255) and InvalidArgument for an empty family.
CiphertextContainer encrypt(std::span<const std::uint8_t> plaintext, const CipherKeyBundle& keys,
                            const SBoxFamily& family, int rounds = kDefaultRounds);

/// Returns exactly original_length bytes. Throws MalformedContainer for an
/// inconsistent container.
std::vector<std::uint8_t> decrypt(const CiphertextContainer& ct, const CipherKeyBundle& keys,
                                  const SBoxFamily& family);

struct BitAvalanche {
  std::size_t trials = 0;
  double mean_changed_fraction = 0.0;
  double min_changed_fraction = 0.0;
};

/// Flips one random plaintext bit per trial and measures the fraction of
/// changed ciphertext bits. Plaintexts are random, message_bytes long.
BitAvalanche bit_avalanche(const CipherKeyBundle& keys, const SBoxFamily& family, int rounds,
                           std::size_t trials, std::size_t message_bytes, std::uint64_t seed);

void to_json(nlohmann::json& j, const BitAvalanche& a);

}  // namespace sfspn
