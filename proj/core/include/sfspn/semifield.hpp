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
#include <optional>

namespace sfspn {

class SBox;

/// Element of GF(4) = {0, 1, w, w^2}, encoded 0, 1, 2, 3 (w^2 = 1 + w).
class Gf4 {
 public:
  constexpr Gf4() = default;
  constexpr explicit Gf4(std::uint8_t value) : value_(value & 3u) {}

  constexpr std::uint8_t value() const { return value_; }

  friend constexpr Gf4 operator+(Gf4 a, Gf4 b) {
    return Gf4(static_cast<std::uint8_t>(a.value_ ^ b.value_));
  }
  friend constexpr Gf4 operator*(Gf4 a, Gf4 b) {
    if (a.value_ == 0 || b.value_ == 0) return Gf4(0);
    // Nonzero elements form the cyclic group <w> of order 3: 1 = w^0, w, w^2.
    const int log_a = a.value_ - 1;
    const int log_b = b.value_ - 1;
    return Gf4(static_cast<std::uint8_t>((log_a + log_b) % 3 + 1));
  }
  friend constexpr bool operator==(Gf4, Gf4) = default;

  constexpr Gf4 squared() const { return *this * *this; }

 private:
  std::uint8_t value_ = 0;
};

/// Element u + lambda*v of the 16-element proper semifield. The nibble
/// encoding is (u << 2) | v, which turns semifield addition into XOR.
struct SemifieldElement {
  Gf4 u;
  Gf4 v;

  constexpr std::uint8_t nibble() const {
    return static_cast<std::uint8_t>((u.value() << 2) | v.value());
  }
  static constexpr SemifieldElement from_nibble(std::uint8_t n) {
    return {Gf4(static_cast<std::uint8_t>((n >> 2) & 3u)), Gf4(static_cast<std::uint8_t>(n & 3u))};
  }

  static constexpr SemifieldElement zero() { return {}; }
  static constexpr SemifieldElement one() { return {Gf4(1), Gf4(0)}; }

  friend constexpr bool operator==(SemifieldElement, SemifieldElement) = default;
};

inline constexpr int kSemifieldOrder = 16;

constexpr SemifieldElement sf_add(SemifieldElement a, SemifieldElement b) {
  return {a.u + b.u, a.v + b.v};
}

/// (u + lv)(x + ly) = (ux + v^2 y) + l(vx + u^2 y + v^2 y^2)
constexpr SemifieldElement sf_mul(SemifieldElement a, SemifieldElement b) {
  const Gf4 u = a.u, v = a.v, x = b.u, y = b.v;
  return {u * x + v.squared() * y, v * x + u.squared() * y + v.squared() * y.squared()};
}

enum class InverseSide { Left, Right };

/// Right inverse solves a*x = e; left inverse solves x*a = e.
/// Throws Error(ZeroInverse) for a = 0.
SemifieldElement sf_inverse(SemifieldElement a, InverseSide side = InverseSide::Right);

/// P(X) = X^2 + alpha X + beta over the semifield.
struct PseudoPolynomial {
  SemifieldElement alpha;
  SemifieldElement beta;
};

bool is_pseudo_irreducible(const PseudoPolynomial& p);

/// Operand order for the non-associative products inside T. With
/// InverseFirst, a^-1 b, a^-1 c and a^-1 d keep the inverse on the left and
/// d = c (alpha - gamma); InverseLast mirrors every product.
enum class ProductOrder { InverseFirst, InverseLast };

struct TConvention {
  InverseSide inverse_side = InverseSide::Right;
  ProductOrder order = ProductOrder::InverseFirst;
};

/// Raw output of the T map for every byte (a << 4) | b, without any
/// bijectivity requirement.
std::array<std::uint8_t, 256> t_map_table(const PseudoPolynomial& p, TConvention conv = {});

/// Builds the S-box T(a, b). Throws NotPseudoIrreducible when p fails the
/// pseudo-irreducibility test and NonBijectiveResult when T collides.
SBox build_sbox_via_T(const PseudoPolynomial& p, TConvention conv = {});

/// Number of distinct values in t_map_table(p, conv).
int t_map_image_size(const PseudoPolynomial& p, TConvention conv = {});

}  // namespace sfspn
