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

#include "oracles.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numeric>

namespace oracle {

std::uint8_t gf4_mul(std::uint8_t a, std::uint8_t b) {
  unsigned product = 0;
  for (int i = 0; i < 2; ++i)
    if (b >> i & 1u) product ^= static_cast<unsigned>(a) << i;
  if (product & 4u) product ^= 0b111u;
  return static_cast<std::uint8_t>(product);
}

std::uint8_t semifield_mul(std::uint8_t a, std::uint8_t b) {
  const std::uint8_t u = a >> 2, v = a & 3, x = b >> 2, y = b & 3;
  const std::uint8_t v2 = gf4_mul(v, v), u2 = gf4_mul(u, u), y2 = gf4_mul(y, y);
  const std::uint8_t first = gf4_mul(u, x) ^ gf4_mul(v2, y);
  const std::uint8_t second = gf4_mul(v, x) ^ gf4_mul(u2, y) ^ gf4_mul(v2, y2);
  return static_cast<std::uint8_t>(first << 2 | second);
}

namespace {

std::uint8_t gf256_mul(std::uint8_t a, std::uint8_t b) {
  std::uint8_t p = 0;
  while (b) {
    if (b & 1) p ^= a;
    a = static_cast<std::uint8_t>((a << 1) ^ ((a & 0x80) ? 0x1B : 0));
    b >>= 1;
  }
  return p;
}

}  // namespace

sfspn::SBox aes_from_field() {
  sfspn::SBox::Table t{};
  for (int x = 0; x < 256; ++x) {
    std::uint8_t inv = 0;
    for (int y = 1; y < 256 && x != 0; ++y)
      if (gf256_mul(static_cast<std::uint8_t>(x), static_cast<std::uint8_t>(y)) == 1) inv = static_cast<std::uint8_t>(y);
    std::uint8_t out = 0x63;
    for (int i = 0; i < 8; ++i) {
      const int bit = (inv >> i ^ inv >> ((i + 4) % 8) ^ inv >> ((i + 5) % 8) ^ inv >> ((i + 6) % 8) ^
                       inv >> ((i + 7) % 8)) & 1;
      out ^= static_cast<std::uint8_t>(bit << i);
    }
    t[static_cast<std::size_t>(x)] = out;
  }
  return sfspn::SBox(t);
}

int brute_force_nonlinearity(const sfspn::SBox& s) {
  int best = 256;
  for (int mask = 1; mask < 256; ++mask)
    for (int a = 0; a < 256; ++a) {
      int distance = 0;
      for (int x = 0; x < 256; ++x) {
        const int f = std::popcount(static_cast<unsigned>(s[static_cast<std::uint8_t>(x)] & mask)) & 1;
        const int l = std::popcount(static_cast<unsigned>(x & a)) & 1;
        distance += f != l;
      }
      best = std::min({best, distance, 256 - distance});
    }
  return best;
}

sfspn::SBox random_bijection(std::mt19937_64& rng) {
  sfspn::SBox::Table t{};
  std::iota(t.begin(), t.end(), 0);
  std::shuffle(t.begin(), t.end(), rng);
  return sfspn::SBox(t);
}

GlcmDirect glcm_direct(const sfspn::GrayImage& img, int row_offset, int col_offset, bool symmetric) {
  std::vector<std::pair<int, int>> pairs;
  for (long r = 0; r < static_cast<long>(img.height); ++r)
    for (long c = 0; c < static_cast<long>(img.width); ++c) {
      const long r2 = r + row_offset, c2 = c + col_offset;
      if (r2 < 0 || c2 < 0 || r2 >= static_cast<long>(img.height) || c2 >= static_cast<long>(img.width)) continue;
      const int a = img.pixels[static_cast<std::size_t>(r) * img.width + static_cast<std::size_t>(c)];
      const int b = img.pixels[static_cast<std::size_t>(r2) * img.width + static_cast<std::size_t>(c2)];
      pairs.emplace_back(a, b);
      if (symmetric) pairs.emplace_back(b, a);
    }
  GlcmDirect out;
  const double n = static_cast<double>(pairs.size());
  double sa = 0, sb = 0;
  for (auto [a, b] : pairs) {
    out.contrast += (a - b) * (a - b) / n;
    out.homogeneity += 1.0 / (1.0 + std::abs(a - b)) / n;
    sa += a / n;
    sb += b / n;
  }
  double cov = 0, va = 0, vb = 0;
  for (auto [a, b] : pairs) {
    cov += (a - sa) * (b - sb) / n;
    va += (a - sa) * (a - sa) / n;
    vb += (b - sb) * (b - sb) / n;
  }
  if (va > 0 && vb > 0) out.correlation = cov / std::sqrt(va * vb);
  std::size_t coincide = 0;
  for (const auto& p : pairs)
    for (const auto& q : pairs) coincide += p == q;
  out.energy = static_cast<double>(coincide) / (n * n);
  return out;
}

double monobit_p(const std::vector<std::uint8_t>& bits) {
  const auto ones = static_cast<double>(std::count(bits.begin(), bits.end(), std::uint8_t{1}));
  const auto n = static_cast<double>(bits.size());
  return std::erfc(std::abs(2.0 * ones - n) / std::sqrt(2.0 * n));
}

std::vector<double> tdercs_x(const sfspn::TdErcsParams& p, std::size_t n) {
  const double mu2 = p.mu * p.mu;
  std::vector<double> xs{p.x0};
  std::vector<double> ys{p.mu * std::sqrt(1.0 - p.x0 * p.x0)};
  const double kp0 = -(xs[0] / ys[0]) * mu2;
  double k = (p.tan_alpha + kp0) / (1.0 - kp0 * p.tan_alpha);
  for (std::size_t i = 1; i <= n; ++i) {
    const double x = -(2.0 * k * ys[i - 1] + xs[i - 1] * (mu2 - k * k)) / (mu2 + k * k);
    const double y = k * (x - xs[i - 1]) + ys[i - 1];
    xs.push_back(x);
    ys.push_back(y);
    const double kd = i < static_cast<std::size_t>(p.m) ? kp0
                                                        : -(xs[i - static_cast<std::size_t>(p.m)] /
                                                            ys[i - static_cast<std::size_t>(p.m)]) * mu2;
    // Mirror the chord direction (1, k) in the tangent direction (1, kd).
    const double dot = 1.0 + k * kd, norm = 1.0 + kd * kd;
    const double rx = 2.0 * dot / norm - 1.0, ry = 2.0 * dot * kd / norm - k;
    k = ry / rx;
  }
  return {xs.begin() + 1, xs.end()};
}

std::vector<double> logistic(double x0, double b, double r, std::size_t n, std::size_t burn_in) {
  std::vector<double> out;
  double x = x0;
  for (std::size_t i = 0; i < burn_in + n; ++i) {
    x = r * x * (1.0 - std::pow(x, 1.0 - b));
    if (i >= burn_in) out.push_back(x);
  }
  return out;
}

sfspn::CipherKeyBundle random_keys(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (;;) {
    sfspn::CipherKeyBundle k;
    for (auto& byte : k.k1.bytes) byte = static_cast<std::uint8_t>(rng());
    k.k2 = {0.05 + 0.9 * unit(rng), 0.2, 4.45 + 0.1 * unit(rng)};
    k.k3 = {-0.95 + 1.9 * unit(rng), -3.0 + 6.0 * unit(rng), 0.1 + 0.85 * unit(rng), 2 + static_cast<int>(rng() % 7)};
    try {
      k.validate();
      return k;
    } catch (const sfspn::Error&) {
      // periodic window hit; draw again
    }
  }
}

}  // namespace oracle
