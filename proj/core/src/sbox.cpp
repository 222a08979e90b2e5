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

#include "sfspn/sbox.hpp"

#include <algorithm>
#include <bitset>
#include <fstream>
#include <iomanip>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>

#include "sfspn/error.hpp"

namespace sfspn {
namespace {

// Rows are indexed by the high nibble of the input byte.
constexpr SBox::Table kFixture = {
    63,  32,  154, 249, 92,  67,  216, 164, 187, 125, 30,  133, 199, 98,  230, 1,
    140, 185, 128, 57,  161, 156, 206, 166, 44,  151, 93,  157, 198, 163, 79,  111,
    91,  170, 222, 97,  171, 50,  36,  34,  158, 61,  76,  202, 123, 229, 101, 214,
    180, 191, 75,  53,  251, 182, 107, 80,  83,  5,   146, 243, 228, 78,  41,  51,
    208, 64,  74,  188, 212, 69,  73,  16,  224, 183, 108, 143, 196, 9,   130, 8,
    99,  219, 127, 241, 227, 82,  19,  42,  40,  96,  95,  248, 236, 235, 46,  194,
    94,  37,  4,   65,  105, 149, 114, 52,  117, 77,  49,  172, 38,  240, 178, 131,
    2,   10,  132, 90,  87,  134, 255, 31,  48,  20,  54,  136, 210, 215, 112, 116,
    177, 6,   211, 152, 135, 142, 56,  119, 153, 150, 138, 103, 70,  109, 245, 29,
    58,  27,  55,  238, 59,  129, 225, 223, 209, 147, 204, 145, 184, 60,  81,  169,
    213, 26,  43,  89,  11,  18,  189, 247, 160, 45,  120, 118, 113, 205, 139, 24,
    232, 17,  173, 190, 226, 126, 0,   168, 203, 155, 250, 88,  159, 239, 246, 148,
    237, 39,  186, 15,  47,  13,  12,  84,  33,  115, 176, 25,  244, 141, 200, 110,
    137, 72,  197, 35,  100, 71,  124, 22,  193, 253, 231, 207, 234, 21,  218, 167,
    7,   233, 195, 68,  162, 14,  121, 122, 62,  144, 106, 252, 165, 86,  179, 221,
    102, 201, 220, 181, 174, 175, 104, 242, 23,  66,  85,  217, 3,   192, 28,  254,
};

constexpr SBox::Table kAes = {
    0x63, 0x7c, 0x77, 0x7b, 0xf2, 0x6b, 0x6f, 0xc5, 0x30, 0x01, 0x67, 0x2b, 0xfe, 0xd7, 0xab, 0x76,
    0xca, 0x82, 0xc9, 0x7d, 0xfa, 0x59, 0x47, 0xf0, 0xad, 0xd4, 0xa2, 0xaf, 0x9c, 0xa4, 0x72, 0xc0,
    0xb7, 0xfd, 0x93, 0x26, 0x36, 0x3f, 0xf7, 0xcc, 0x34, 0xa5, 0xe5, 0xf1, 0x71, 0xd8, 0x31, 0x15,
    0x04, 0xc7, 0x23, 0xc3, 0x18, 0x96, 0x05, 0x9a, 0x07, 0x12, 0x80, 0xe2, 0xeb, 0x27, 0xb2, 0x75,
    0x09, 0x83, 0x2c, 0x1a, 0x1b, 0x6e, 0x5a, 0xa0, 0x52, 0x3b, 0xd6, 0xb3, 0x29, 0xe3, 0x2f, 0x84,
    0x53, 0xd1, 0x00, 0xed, 0x20, 0xfc, 0xb1, 0x5b, 0x6a, 0xcb, 0xbe, 0x39, 0x4a, 0x4c, 0x58, 0xcf,
    0xd0, 0xef, 0xaa, 0xfb, 0x43, 0x4d, 0x33, 0x85, 0x45, 0xf9, 0x02, 0x7f, 0x50, 0x3c, 0x9f, 0xa8,
    0x51, 0xa3, 0x40, 0x8f, 0x92, 0x9d, 0x38, 0xf5, 0xbc, 0xb6, 0xda, 0x21, 0x10, 0xff, 0xf3, 0xd2,
    0xcd, 0x0c, 0x13, 0xec, 0x5f, 0x97, 0x44, 0x17, 0xc4, 0xa7, 0x7e, 0x3d, 0x64, 0x5d, 0x19, 0x73,
    0x60, 0x81, 0x4f, 0xdc, 0x22, 0x2a, 0x90, 0x88, 0x46, 0xee, 0xb8, 0x14, 0xde, 0x5e, 0x0b, 0xdb,
    0xe0, 0x32, 0x3a, 0x0a, 0x49, 0x06, 0x24, 0x5c, 0xc2, 0xd3, 0xac, 0x62, 0x91, 0x95, 0xe4, 0x79,
    0xe7, 0xc8, 0x37, 0x6d, 0x8d, 0xd5, 0x4e, 0xa9, 0x6c, 0x56, 0xf4, 0xea, 0x65, 0x7a, 0xae, 0x08,
    0xba, 0x78, 0x25, 0x2e, 0x1c, 0xa6, 0xb4, 0xc6, 0xe8, 0xdd, 0x74, 0x1f, 0x4b, 0xbd, 0x8b, 0x8a,
    0x70, 0x3e, 0xb5, 0x66, 0x48, 0x03, 0xf6, 0x0e, 0x61, 0x35, 0x57, 0xb9, 0x86, 0xc1, 0x1d, 0x9e,
    0xe1, 0xf8, 0x98, 0x11, 0x69, 0xd9, 0x8e, 0x94, 0x9b, 0x1e, 0x87, 0xe9, 0xce, 0x55, 0x28, 0xdf,
    0x8c, 0xa1, 0x89, 0x0d, 0xbf, 0xe6, 0x42, 0x68, 0x41, 0x99, 0x2d, 0x0f, 0xb0, 0x54, 0xbb, 0x16,
};

constexpr std::array<std::uint32_t, 9> kFactorial = {1, 1, 2, 6, 24, 120, 720, 5040, 40320};

std::string join_bytes(const std::vector<std::uint8_t>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    static constexpr char digits[] = "0123456789abcdef";
    if (i) out += ',';
    out += "0x";
    out += digits[values[i] >> 4];
    out += digits[values[i] & 0xF];
  }
  return out;
}

[[noreturn]] void malformed(const std::string& what) { throw Error(Errc::MalformedFile, what); }

int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

// Reads the next 16 table lines; tokens are whitespace separated two-digit hex.
SBox parse_table_lines(std::istream& in, std::size_t& line_no) {
  SBox::Table table{};
  std::size_t count = 0;
  std::string line;
  while (count < 256 && std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line == "---" || line.rfind("seed-rank:", 0) == 0)
      malformed("table ended after " + std::to_string(count) + " entries (line " +
                std::to_string(line_no) + ")");
    std::istringstream tokens(line);
    std::string tok;
    while (tokens >> tok) {
      if (tok.size() != 2 || hex_digit(tok[0]) < 0 || hex_digit(tok[1]) < 0)
        malformed("non-hex token '" + tok + "' on line " + std::to_string(line_no));
      if (count == 256) malformed("more than 256 entries");
      table[count++] = static_cast<std::uint8_t>(hex_digit(tok[0]) * 16 + hex_digit(tok[1]));
    }
  }
  if (count != 256) malformed("expected 256 entries, found " + std::to_string(count));
  SBox box(table);
  const auto defect = find_bijectivity_defect(box);
  if (!defect.duplicated.empty()) malformed("duplicate value(s) " + join_bytes(defect.duplicated));
  return box;
}

}  // namespace

SBox::SBox() { std::iota(table_.begin(), table_.end(), std::uint8_t{0}); }

bool SBox::is_permutation() const {
  std::bitset<256> seen;
  for (std::uint8_t v : table_) seen.set(v);
  return seen.all();
}

SBox SBox::inverse() const {
  if (!is_permutation()) throw Error(Errc::InvalidArgument, "inverse of a non-bijective table");
  Table inv{};
  for (int x = 0; x < 256; ++x) inv[table_[x]] = static_cast<std::uint8_t>(x);
  return SBox(inv);
}

BijectivityDefect find_bijectivity_defect(const SBox& s) {
  std::array<int, 256> counts{};
  for (std::uint8_t v : s.table()) ++counts[v];
  BijectivityDefect defect;
  for (int v = 0; v < 256; ++v) {
    if (counts[v] > 1) defect.duplicated.push_back(static_cast<std::uint8_t>(v));
    if (counts[v] == 0) defect.missing.push_back(static_cast<std::uint8_t>(v));
  }
  return defect;
}

SBox load_fixture_sbox() {
  SBox box(kFixture);
  const auto defect = find_bijectivity_defect(box);
  if (!defect.empty())
    throw Error(Errc::FixtureNotBijective, "duplicated {" + join_bytes(defect.duplicated) +
                                               "} missing {" + join_bytes(defect.missing) + "}");
  return box;
}

SBox aes_sbox() { return SBox(kAes); }

BitPermutation::BitPermutation() { std::iota(sigma_.begin(), sigma_.end(), std::uint8_t{0}); }

BitPermutation::BitPermutation(const std::array<std::uint8_t, 8>& sigma) : sigma_(sigma) {
  std::bitset<8> seen;
  for (std::uint8_t s : sigma_) {
    if (s > 7 || seen.test(s)) throw Error(Errc::InvalidArgument, "not a permutation of 0..7");
    seen.set(s);
  }
}

BitPermutation BitPermutation::from_one_based(const std::array<int, 8>& one_line) {
  std::array<std::uint8_t, 8> sigma{};
  for (std::size_t j = 0; j < 8; ++j) {
    if (one_line[j] < 1 || one_line[j] > 8)
      throw Error(Errc::InvalidArgument, "one-line entries must be in 1..8");
    sigma[j] = static_cast<std::uint8_t>(one_line[j] - 1);
  }
  return BitPermutation(sigma);
}

BitPermutation BitPermutation::inverse() const {
  std::array<std::uint8_t, 8> inv{};
  for (std::uint8_t j = 0; j < 8; ++j) inv[sigma_[j]] = j;
  return BitPermutation(inv);
}

std::uint8_t BitPermutation::apply_to_byte(std::uint8_t value) const {
  // Position j counts from the most significant bit.
  std::uint8_t out = 0;
  for (int j = 0; j < 8; ++j) {
    const int bit = (value >> (7 - sigma_[j])) & 1;
    out = static_cast<std::uint8_t>(out | (bit << (7 - j)));
  }
  return out;
}

BitPermutation compose(const BitPermutation& p, const BitPermutation& q) {
  std::array<std::uint8_t, 8> r{};
  for (int j = 0; j < 8; ++j) r[j] = p[q[j]];
  return BitPermutation(r);
}

SBox apply_bit_permutation(const SBox& s, const BitPermutation& p) {
  SBox::Table out{};
  for (int x = 0; x < 256; ++x) out[x] = p.apply_to_byte(s[static_cast<std::uint8_t>(x)]);
  return SBox(out);
}

BitPermutation unrank_permutation(std::uint32_t rank) {
  if (rank >= kS8Order)
    throw Error(Errc::RankOutOfRange, std::to_string(rank) + " is not in 0..40319");
  std::vector<std::uint8_t> pool = {0, 1, 2, 3, 4, 5, 6, 7};
  std::array<std::uint8_t, 8> sigma{};
  for (int i = 0; i < 8; ++i) {
    const std::uint32_t f = kFactorial[7 - i];
    const std::uint32_t digit = rank / f;
    rank %= f;
    sigma[i] = pool[digit];
    pool.erase(pool.begin() + digit);
  }
  return BitPermutation(sigma);
}

std::uint32_t rank_permutation(const BitPermutation& p) {
  std::uint32_t rank = 0;
  for (int i = 0; i < 8; ++i) {
    std::uint32_t smaller = 0;
    for (int j = i + 1; j < 8; ++j)
      if (p[j] < p[i]) ++smaller;
    rank += smaller * kFactorial[7 - i];
  }
  return rank;
}

SBoxFamily::SBoxFamily(SBox seed, std::vector<std::uint32_t> indices)
    : seed_(std::move(seed)), indices_(std::move(indices)) {
  if (indices_.empty()) throw Error(Errc::InvalidArgument, "family must not be empty");
  for (std::uint32_t r : indices_)
    if (r >= kS8Order) throw Error(Errc::RankOutOfRange, std::to_string(r));
}

SBox SBoxFamily::box(std::size_t i) const {
  return apply_bit_permutation(seed_, unrank_permutation(indices_.at(i)));
}

std::vector<SBox> SBoxFamily::materialize() const {
  std::vector<SBox> boxes;
  boxes.reserve(indices_.size());
  for (std::size_t i = 0; i < indices_.size(); ++i) boxes.push_back(box(i));
  return boxes;
}

SBoxFamily generate_family(const SBox& seed, std::uint32_t count) {
  if (count < 1 || count > kS8Order)
    throw Error(Errc::RankOutOfRange, "family size " + std::to_string(count) + " not in 1..40320");
  if (!seed.is_permutation()) throw Error(Errc::InvalidArgument, "seed S-box is not bijective");
  std::vector<std::uint32_t> ranks(count);
  std::iota(ranks.begin(), ranks.end(), 0u);
  return SBoxFamily(seed, std::move(ranks));
}

void write_sbox(std::ostream& out, const SBox& s) {
  const auto flags = out.flags();
  out << std::hex << std::setfill('0');
  for (int row = 0; row < 16; ++row) {
    for (int col = 0; col < 16; ++col) {
      if (col) out << ' ';
      out << std::setw(2) << static_cast<int>(s.table()[row * 16 + col]);
    }
    out << '\n';
  }
  out.flags(flags);
}

SBox read_sbox(std::istream& in) {
  std::size_t line_no = 0;
  SBox box = parse_table_lines(in, line_no);
  std::string rest;
  while (std::getline(in, rest))
    if (rest.find_first_not_of(" \t\r") != std::string::npos) malformed("trailing content after 256 entries");
  return box;
}

void write_sbox_file(const SBox& s, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::MalformedFile, "cannot open " + path.string() + " for writing");
  write_sbox(out, s);
}

SBox read_sbox_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::MalformedFile, "cannot open " + path.string());
  return read_sbox(in);
}

void write_family(std::ostream& out, const SBoxFamily& family) {
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (i) out << "---\n";
    out << "seed-rank: " << family.indices()[i] << '\n';
    write_sbox(out, family.box(i));
  }
}

std::vector<RankedSBox> read_family(std::istream& in) {
  std::vector<RankedSBox> boxes;
  std::size_t line_no = 0;
  std::string line;
  bool expect_header = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (expect_header) {
      constexpr std::string_view kTag = "seed-rank:";
      if (line.rfind(kTag, 0) != 0) malformed("expected 'seed-rank:' on line " + std::to_string(line_no));
      std::uint32_t rank = 0;
      try {
        rank = static_cast<std::uint32_t>(std::stoul(line.substr(kTag.size())));
      } catch (const std::exception&) {
        malformed("bad rank on line " + std::to_string(line_no));
      }
      if (rank >= kS8Order) malformed("rank out of range on line " + std::to_string(line_no));
      boxes.push_back({rank, parse_table_lines(in, line_no)});
      expect_header = false;
    } else {
      if (line != "---") malformed("expected '---' separator on line " + std::to_string(line_no));
      expect_header = true;
    }
  }
  if (boxes.empty()) malformed("family file holds no S-boxes");
  if (expect_header) malformed("dangling '---' separator at end of family file");
  return boxes;
}

void write_family_file(const SBoxFamily& family, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::MalformedFile, "cannot open " + path.string() + " for writing");
  write_family(out, family);
}

std::vector<RankedSBox> read_family_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::MalformedFile, "cannot open " + path.string());
  return read_family(in);
}

}  // namespace sfspn
