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

#include "sfspn/semifield.hpp"

#include <bitset>
#include <string>

#include "sfspn/error.hpp"
#include "sfspn/sbox.hpp"

namespace sfspn {
namespace {

using Table16 = std::array<std::array<std::uint8_t, 16>, 16>;

constexpr Table16 make_mul_table() {
  Table16 t{};
  for (std::uint8_t a = 0; a < 16; ++a)
    for (std::uint8_t b = 0; b < 16; ++b)
      t[a][b] = sf_mul(SemifieldElement::from_nibble(a), SemifieldElement::from_nibble(b)).nibble();
  return t;
}

constexpr Table16 kMul = make_mul_table();

struct InverseTables {
  std::array<std::uint8_t, 16> right{};
  std::array<std::uint8_t, 16> left{};
};

constexpr InverseTables make_inverse_tables() {
  InverseTables inv{};
  const std::uint8_t e = SemifieldElement::one().nibble();
  for (std::uint8_t a = 1; a < 16; ++a)
    for (std::uint8_t x = 0; x < 16; ++x) {
      if (kMul[a][x] == e) inv.right[a] = x;
      if (kMul[x][a] == e) inv.left[a] = x;
    }
  return inv;
}

constexpr InverseTables kInv = make_inverse_tables();

std::uint8_t mul(std::uint8_t a, std::uint8_t b) { return kMul[a][b]; }

std::uint8_t inv(std::uint8_t a, InverseSide side) {
  return side == InverseSide::Right ? kInv.right[a] : kInv.left[a];
}

// Product with the inverse operand placed according to the convention.
std::uint8_t ordered(std::uint8_t inverse_operand, std::uint8_t other, ProductOrder order) {
  return order == ProductOrder::InverseFirst ? mul(inverse_operand, other)
                                             : mul(other, inverse_operand);
}

}  // namespace

SemifieldElement sf_inverse(SemifieldElement a, InverseSide side) {
  if (a == SemifieldElement::zero()) throw Error(Errc::ZeroInverse, "zero has no inverse");
  return SemifieldElement::from_nibble(inv(a.nibble(), side));
}

bool is_pseudo_irreducible(const PseudoPolynomial& p) {
  const std::uint8_t alpha = p.alpha.nibble();
  const std::uint8_t beta = p.beta.nibble();
  for (std::uint8_t g = 0; g < 16; ++g) {
    // (alpha - g) g - beta; subtraction is addition in characteristic 2.
    if ((mul(alpha ^ g, g) ^ beta) == 0) return false;
  }
  return true;
}

std::array<std::uint8_t, 256> t_map_table(const PseudoPolynomial& p, TConvention conv) {
  if (!is_pseudo_irreducible(p))
    throw Error(Errc::NotPseudoIrreducible, "alpha=" + std::to_string(p.alpha.nibble()) +
                                                " beta=" + std::to_string(p.beta.nibble()));
  const std::uint8_t alpha = p.alpha.nibble();
  const std::uint8_t beta = p.beta.nibble();
  std::array<std::uint8_t, 256> out{};
  for (int byte = 0; byte < 256; ++byte) {
    const auto a = static_cast<std::uint8_t>(byte >> 4);
    const auto b = static_cast<std::uint8_t>(byte & 0x0f);
    if (a == 0) {
      out[byte] = b == 0 ? 0 : inv(b, conv.inverse_side);
      continue;
    }
    const std::uint8_t a_inv = inv(a, conv.inverse_side);
    const std::uint8_t gamma = ordered(a_inv, b, conv.order);
    const std::uint8_t diff = alpha ^ gamma;
    const std::uint8_t c = inv(mul(diff, gamma) ^ beta, conv.inverse_side);
    const std::uint8_t d = conv.order == ProductOrder::InverseFirst ? mul(c, diff) : mul(diff, c);
    const std::uint8_t hi = ordered(a_inv, c, conv.order);
    const std::uint8_t lo = ordered(a_inv, d, conv.order);
    out[byte] = static_cast<std::uint8_t>((hi << 4) | lo);
  }
  return out;
}

int t_map_image_size(const PseudoPolynomial& p, TConvention conv) {
  std::bitset<256> seen;
  for (std::uint8_t v : t_map_table(p, conv)) seen.set(v);
  return static_cast<int>(seen.count());
}

SBox build_sbox_via_T(const PseudoPolynomial& p, TConvention conv) {
  SBox box(t_map_table(p, conv));
  if (!box.is_permutation()) {
    const auto defect = find_bijectivity_defect(box);
    throw Error(Errc::NonBijectiveResult,
                "T image has " + std::to_string(256 - defect.missing.size()) +
                    " distinct values; try the other inverse/product convention");
  }
  return box;
}

}  // namespace sfspn
