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

// Independent reference implementations used to cross-check the library.
// They favour directness over speed and share no code with sfspn_core.

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "sfspn/chaos.hpp"
#include "sfspn/cipher.hpp"
#include "sfspn/error.hpp"
#include "sfspn/image.hpp"
#include "sfspn/sbox.hpp"

namespace oracle {

// GF(4) as polynomials over GF(2) modulo x^2 + x + 1; 2 encodes x.
std::uint8_t gf4_mul(std::uint8_t a, std::uint8_t b);

// Semifield product from the defining formula, operands as (u, v) nibbles.
std::uint8_t semifield_mul(std::uint8_t a, std::uint8_t b);

// GF(2^8) inverse followed by the AES affine map.
sfspn::SBox aes_from_field();

// Minimum Hamming distance from every nonzero component combination to all
// 512 affine functions.
int brute_force_nonlinearity(const sfspn::SBox& s);

sfspn::SBox random_bijection(std::mt19937_64& rng);

struct GlcmDirect {
  std::optional<double> correlation;
  double contrast = 0.0;
  double homogeneity = 0.0;
  double energy = 0.0;
};

// Sums over neighbouring pixel pairs at 256 levels. Energy is the fraction
// of ordered pair-of-pairs that coincide.
GlcmDirect glcm_direct(const sfspn::GrayImage& img, int row_offset, int col_offset, bool symmetric);

// erfc(|2*ones - n| / sqrt(2n)).
double monobit_p(const std::vector<std::uint8_t>& bits);

// TD-ERCS iterates with the full history kept in vectors.
std::vector<double> tdercs_x(const sfspn::TdErcsParams& p, std::size_t n);

// Modified logistic map with std::pow.
std::vector<double> logistic(double x0, double b, double r, std::size_t n, std::size_t burn_in);

sfspn::CipherKeyBundle random_keys(std::mt19937_64& rng);

}  // namespace oracle
