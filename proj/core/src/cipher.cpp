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

#include "sfspn/cipher.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "sfspn/error.hpp"

namespace sfspn {
namespace {

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_decimal(std::string_view name, std::string_view text) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw Error(Errc::MalformedFile, std::string(name) + ": not a decimal number: '" + std::string(text) + "'");
  return v;
}

int parse_integer(std::string_view name, std::string_view text) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw Error(Errc::MalformedFile, std::string(name) + ": not an integer: '" + std::string(text) + "'");
  return v;
}

void check_rounds(int rounds) {
  if (rounds < 1 || rounds > 255)
    throw Error(Errc::InvalidKeys, "round count must be in 1..255, got " + std::to_string(rounds));
}

// Boxes and inverses for the family positions the selector stream touches.
class BoxCache {
 public:
  BoxCache(const SBoxFamily& family, const std::vector<std::uint32_t>& selectors, bool inverses)
      : forward_(family.size()), inverse_(inverses ? family.size() : 0) {
    for (auto sel : selectors) {
      auto& slot = forward_[sel];
      if (slot) continue;
      slot = family.box(sel);
      if (inverses) inverse_[sel] = slot->inverse();
    }
  }
  const SBox& forward(std::uint32_t i) const { return *forward_[i]; }
  const SBox& inverse(std::uint32_t i) const { return *inverse_[i]; }

 private:
  std::vector<std::optional<SBox>> forward_;
  std::vector<std::optional<SBox>> inverse_;
};

bool consistent(std::uint64_t original_length, std::size_t block_bytes) {
  return original_length > 0 && block_bytes == padded_length(original_length);
}

void check_family(const SBoxFamily& family) {
  if (family.size() == 0) throw Error(Errc::InvalidArgument, "S-box family is empty");
  if (!family.seed().is_permutation()) throw Error(Errc::InvalidArgument, "family seed is not bijective");
}

}  // namespace

Key128 Key128::from_hex(std::string_view hex) {
  if (hex.size() != 32) throw Error(Errc::InvalidKeys, "k1 must be 32 hex digits, got " + std::to_string(hex.size()));
  Key128 k;
  for (std::size_t i = 0; i < 16; ++i) {
    const int hi = hex_value(hex[2 * i]);
    const int lo = hex_value(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) throw Error(Errc::InvalidKeys, "k1 contains a non-hex digit");
    k.bytes[i] = static_cast<std::uint8_t>(hi << 4 | lo);
  }
  return k;
}

std::string Key128::to_hex() const {
  static constexpr char digits[] = "0123456789abcdef";
  std::string s;
  s.reserve(32);
  for (auto b : bytes) {
    s.push_back(digits[b >> 4]);
    s.push_back(digits[b & 0xF]);
  }
  return s;
}

void CipherKeyBundle::validate() const {
  try {
    k2.validate();
    k3.validate();
  } catch (const Error& e) {
    throw Error(Errc::InvalidKeys, e.what());
  }
  OrbitClass verdict;
  try {
    verdict = classify_logistic(k2);
  } catch (const Error& e) {
    throw Error(Errc::InvalidKeys, std::string("k2 orbit unusable: ") + e.what());
  }
  if (verdict.kind != OrbitKind::Aperiodic)
    throw Error(Errc::InvalidKeys, "k2 orbit is not chaotic (" +
                                       std::string(verdict.kind == OrbitKind::Fixed ? "fixed point" : "periodic") +
                                       ")");
}

CipherKeyBundle parse_key_file(std::istream& in) {
  static const std::array<std::string_view, 8> names{"k1", "k2.x0", "k2.b", "k2.r",
                                                     "k3.x0", "k3.tan_alpha", "k3.mu", "k3.m"};
  std::map<std::string, std::string, std::less<>> fields;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos)
      throw Error(Errc::MalformedFile, "key file line " + std::to_string(line_no) + ": expected 'name = value'");
    const auto name = trim(view.substr(0, eq));
    const auto value = trim(view.substr(eq + 1));
    if (std::find(names.begin(), names.end(), name) == names.end())
      throw Error(Errc::MalformedFile, "key file line " + std::to_string(line_no) + ": unknown field '" +
                                           std::string(name) + "'");
    if (value.empty())
      throw Error(Errc::MalformedFile, "key file line " + std::to_string(line_no) + ": empty value");
    if (!fields.emplace(std::string(name), std::string(value)).second)
      throw Error(Errc::InvalidKeys, "field '" + std::string(name) + "' given twice");
  }
  for (auto name : names)
    if (!fields.contains(name)) throw Error(Errc::InvalidKeys, "missing field '" + std::string(name) + "'");

  CipherKeyBundle keys;
  keys.k1 = Key128::from_hex(fields.at("k1"));
  keys.k2.x0 = parse_decimal("k2.x0", fields.at("k2.x0"));
  keys.k2.b = parse_decimal("k2.b", fields.at("k2.b"));
  keys.k2.r = parse_decimal("k2.r", fields.at("k2.r"));
  keys.k3.x0 = parse_decimal("k3.x0", fields.at("k3.x0"));
  keys.k3.tan_alpha = parse_decimal("k3.tan_alpha", fields.at("k3.tan_alpha"));
  keys.k3.mu = parse_decimal("k3.mu", fields.at("k3.mu"));
  keys.k3.m = parse_integer("k3.m", fields.at("k3.m"));
  return keys;
}

CipherKeyBundle read_key_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::MalformedFile, "cannot open key file " + path.string());
  return parse_key_file(in);
}

void write_key_file(std::ostream& out, const CipherKeyBundle& keys) {
  // Shortest text that reads back to the same double.
  auto decimal = [](double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
  };
  out << "k1 = " << keys.k1.to_hex() << '\n'
      << "k2.x0 = " << decimal(keys.k2.x0) << '\n'
      << "k2.b = " << decimal(keys.k2.b) << '\n'
      << "k2.r = " << decimal(keys.k2.r) << '\n'
      << "k3.x0 = " << decimal(keys.k3.x0) << '\n'
      << "k3.tan_alpha = " << decimal(keys.k3.tan_alpha) << '\n'
      << "k3.mu = " << decimal(keys.k3.mu) << '\n'
      << "k3.m = " << keys.k3.m << '\n';
}

std::size_t padded_length(std::size_t n) {
  const std::size_t blocks = (n + kBlockBytes - 1) / kBlockBytes;
  return std::max(blocks, kMinBlocks) * kBlockBytes;
}

std::uint8_t rotl_byte(std::uint8_t b, int k) { return std::rotl(b, k & 7); }
std::uint8_t rotr_byte(std::uint8_t b, int k) { return std::rotr(b, k & 7); }

Keystream derive_streams(const CipherKeyBundle& keys, std::size_t n_blocks, int rounds,
                         std::uint32_t family_size) {
  if (n_blocks < 1 || rounds < 1 || family_size < 1)
    throw Error(Errc::InvalidArgument, "stream counts must be at least 1");
  const std::size_t n = kBlockBytes * n_blocks * static_cast<std::size_t>(rounds);
  Keystream ks;
  ks.shifts = quantize_shifts(logistic_sequence(keys.k2, n));
  ks.selectors = quantize_selectors(tdercs_sequence(keys.k3, n).x, family_size);
  return ks;
}

std::vector<std::uint8_t> CiphertextContainer::serialize() const {
  std::vector<std::uint8_t> out(kContainerMagic.begin(), kContainerMagic.end());
  out.push_back(rounds);
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(original_length >> (8 * i)));
  out.insert(out.end(), blocks.begin(), blocks.end());
  return out;
}

CiphertextContainer CiphertextContainer::parse(std::span<const std::uint8_t> bytes) {
  constexpr std::size_t header = 8 + 1 + 8;
  if (bytes.size() < header) throw Error(Errc::MalformedContainer, "container shorter than its header");
  if (!std::equal(kContainerMagic.begin(), kContainerMagic.end(), bytes.begin()))
    throw Error(Errc::MalformedContainer, "bad magic tag");
  CiphertextContainer ct;
  ct.rounds = bytes[8];
  for (int i = 0; i < 8; ++i) ct.original_length |= std::uint64_t{bytes[9 + static_cast<std::size_t>(i)]} << (8 * i);
  ct.blocks.assign(bytes.begin() + header, bytes.end());
  if (ct.rounds == 0) throw Error(Errc::MalformedContainer, "round count is zero");
  if (!consistent(ct.original_length, ct.blocks.size()))
    throw Error(Errc::MalformedContainer, "original length does not fit the ciphertext size");
  return ct;
}

CiphertextContainer encrypt(std::span<const std::uint8_t> plaintext, const CipherKeyBundle& keys,
                            const SBoxFamily& family, int rounds) {
  if (plaintext.empty()) throw Error(Errc::EmptyPlaintext, "nothing to encrypt");
  check_rounds(rounds);
  check_family(family);
  keys.validate();

  CiphertextContainer ct;
  ct.rounds = static_cast<std::uint8_t>(rounds);
  ct.original_length = plaintext.size();
  ct.blocks.assign(padded_length(plaintext.size()), 0);
  const std::size_t n_blocks = ct.blocks.size() / kBlockBytes;
  std::copy(plaintext.begin(), plaintext.end(), ct.blocks.begin());

  const auto ks = derive_streams(keys, n_blocks, rounds, static_cast<std::uint32_t>(family.size()));
  const BoxCache boxes(family, ks.selectors, false);

  auto register_bytes = keys.k1.bytes;
  std::size_t pos = 0;
  for (int round = 0; round < rounds; ++round)
    for (std::size_t b = 0; b < n_blocks; ++b) {
      std::uint8_t* block = ct.blocks.data() + b * kBlockBytes;
      for (std::size_t q = 0; q < kBlockBytes; ++q, ++pos) {
        const std::uint8_t whitened = block[q] ^ register_bytes[q];
        block[q] = substitute_byte(rotl_byte(whitened, ks.shifts[pos]), boxes.forward(ks.selectors[pos]));
      }
      std::copy(block, block + kBlockBytes, register_bytes.begin());
    }
  return ct;
}

std::vector<std::uint8_t> decrypt(const CiphertextContainer& ct, const CipherKeyBundle& keys,
                                  const SBoxFamily& family) {
  if (ct.rounds == 0 || !consistent(ct.original_length, ct.blocks.size()))
    throw Error(Errc::MalformedContainer, "inconsistent container");
  check_family(family);
  keys.validate();

  const int rounds = ct.rounds;
  const std::size_t n_blocks = ct.blocks.size() / kBlockBytes;
  const auto ks = derive_streams(keys, n_blocks, rounds, static_cast<std::uint32_t>(family.size()));
  const BoxCache boxes(family, ks.selectors, true);

  // Blocks run backwards so that each block's whitening register (the
  // previous ciphertext block, or the previous round's last block for block
  // 0) is still available in place.
  std::vector<std::uint8_t> data = ct.blocks;
  for (int round = rounds - 1; round >= 0; --round)
    for (std::size_t b = n_blocks; b-- > 0;) {
      std::uint8_t* block = data.data() + b * kBlockBytes;
      const std::uint8_t* reg = nullptr;
      if (b > 0) reg = block - kBlockBytes;
      else if (round > 0) reg = data.data() + (n_blocks - 1) * kBlockBytes;
      else reg = keys.k1.bytes.data();
      const std::size_t base = (static_cast<std::size_t>(round) * n_blocks + b) * kBlockBytes;
      for (std::size_t q = 0; q < kBlockBytes; ++q) {
        const std::size_t pos = base + q;
        const std::uint8_t rotated = boxes.inverse(ks.selectors[pos])[block[q]];
        block[q] = rotr_byte(rotated, ks.shifts[pos]) ^ reg[q];
      }
    }
  data.resize(ct.original_length);
  return data;
}

BitAvalanche bit_avalanche(const CipherKeyBundle& keys, const SBoxFamily& family, int rounds,
                           std::size_t trials, std::size_t message_bytes, std::uint64_t seed) {
  if (trials < 1 || message_bytes < 1) throw Error(Errc::InvalidArgument, "trials and message size must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> byte(0, 255);
  std::uniform_int_distribution<std::size_t> bit(0, message_bytes * 8 - 1);
  BitAvalanche out;
  out.trials = trials;
  out.min_changed_fraction = 1.0;
  double sum = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    std::vector<std::uint8_t> message(message_bytes);
    for (auto& v : message) v = static_cast<std::uint8_t>(byte(rng));
    auto flipped = message;
    const std::size_t at = bit(rng);
    flipped[at / 8] ^= static_cast<std::uint8_t>(0x80u >> (at % 8));
    const auto c1 = encrypt(message, keys, family, rounds);
    const auto c2 = encrypt(flipped, keys, family, rounds);
    std::size_t changed = 0;
    for (std::size_t i = 0; i < c1.blocks.size(); ++i)
      changed += static_cast<std::size_t>(std::popcount(static_cast<unsigned>(c1.blocks[i] ^ c2.blocks[i])));
    const double fraction = static_cast<double>(changed) / static_cast<double>(c1.blocks.size() * 8);
    sum += fraction;
    out.min_changed_fraction = std::min(out.min_changed_fraction, fraction);
  }
  out.mean_changed_fraction = sum / static_cast<double>(trials);
  return out;
}

void to_json(nlohmann::json& j, const BitAvalanche& a) {
  j = {{"trials", a.trials},
       {"mean_changed_fraction", a.mean_changed_fraction},
       {"min_changed_fraction", a.min_changed_fraction}};
}

}  // namespace sfspn
