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

#include "sfspn/image.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>
#include <random>
#include <string>

#include <boost/math/special_functions/gamma.hpp>
#include <nlohmann/json.hpp>

#include "sfspn/error.hpp"

namespace sfspn {
namespace {

void require_pixels(const GrayImage& img) {
  if (img.empty() || img.width == 0 || img.height == 0) throw Error(Errc::EmptyImage, "image has no pixels");
  if (img.pixels.size() != img.width * img.height)
    throw Error(Errc::InvalidArgument, "pixel count does not match width x height");
}

// Next whitespace-delimited header token, skipping '#' comments.
std::string pgm_token(std::istream& in) {
  std::string token;
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n') {
      }
      if (!token.empty()) break;
      continue;
    }
    if (std::isspace(c)) {
      if (!token.empty()) break;
      continue;
    }
    token.push_back(static_cast<char>(c));
  }
  return token;
}

std::size_t pgm_number(std::istream& in, const char* what) {
  const auto token = pgm_token(in);
  if (token.empty() || !std::all_of(token.begin(), token.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw Error(Errc::MalformedFile, std::string("PGM header: bad ") + what + " '" + token + "'");
  return std::stoul(token);
}

std::size_t level_of(std::uint8_t v, const GlcmConfig& c) {
  const double scaled = std::floor(c.levels * (v - c.gray_low) / (c.gray_high - c.gray_low));
  return static_cast<std::size_t>(std::clamp(scaled, 0.0, static_cast<double>(c.levels - 1)));
}

}  // namespace

GrayImage read_pgm(std::istream& in) {
  if (pgm_token(in) != "P5") throw Error(Errc::MalformedFile, "not a binary PGM (P5) file");
  const auto width = pgm_number(in, "width");
  const auto height = pgm_number(in, "height");
  const auto maxval = pgm_number(in, "maxval");
  if (maxval != 255) throw Error(Errc::MalformedFile, "only maxval 255 is supported");
  if (width == 0 || height == 0) throw Error(Errc::EmptyImage, "PGM has zero size");
  GrayImage img(width, height);
  in.read(reinterpret_cast<char*>(img.pixels.data()), static_cast<std::streamsize>(img.pixels.size()));
  if (static_cast<std::size_t>(in.gcount()) != img.pixels.size())
    throw Error(Errc::MalformedFile, "PGM raster is truncated");
  return img;
}

GrayImage read_pgm_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::MalformedFile, "cannot open " + path.string());
  return read_pgm(in);
}

void write_pgm(std::ostream& out, const GrayImage& img) {
  require_pixels(img);
  out << "P5\n" << img.width << ' ' << img.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(img.pixels.data()), static_cast<std::streamsize>(img.pixels.size()));
}

void write_pgm_file(const GrayImage& img, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::MalformedFile, "cannot write " + path.string());
  write_pgm(out, img);
}

GrayImage make_test_image(std::size_t width, std::size_t height, std::uint64_t seed) {
  if (width == 0 || height == 0) throw Error(Errc::EmptyImage, "test image needs a positive size");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> grain(0.0, 3.0);

  struct Disc {
    double cx, cy, radius, level;
  };
  std::vector<Disc> discs(6);
  for (auto& d : discs) d = {unit(rng), unit(rng), 0.05 + 0.2 * unit(rng), 255.0 * unit(rng)};
  const double phase = 2.0 * std::numbers::pi * unit(rng);

  GrayImage img(width, height);
  for (std::size_t r = 0; r < height; ++r)
    for (std::size_t c = 0; c < width; ++c) {
      const double y = (static_cast<double>(r) + 0.5) / static_cast<double>(height);
      const double x = (static_cast<double>(c) + 0.5) / static_cast<double>(width);
      double v = 60.0 + 120.0 * x * (1.0 - 0.4 * y) + 25.0 * std::sin(6.0 * y + phase);
      for (const auto& d : discs) {
        const double dist = std::hypot(x - d.cx, y - d.cy);
        const double edge = std::clamp((d.radius - dist) * 60.0, 0.0, 1.0);
        v = (1.0 - edge) * v + edge * d.level;
      }
      if (y > 0.8 && std::fmod(x * 10.0, 1.0) < 0.5) v = 0.7 * v + 20.0;
      v += grain(rng);
      img.at(r, c) = static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
    }
  return img;
}

double shannon_entropy(const GrayImage& img) {
  require_pixels(img);
  std::array<std::uint64_t, 256> counts{};
  for (auto v : img.pixels) ++counts[v];
  const auto n = static_cast<double>(img.size());
  double h = 0.0;
  for (auto c : counts)
    if (c) {
      const double p = static_cast<double>(c) / n;
      h -= p * std::log2(p);
    }
  return h;
}

Histogram histogram(const GrayImage& img) {
  require_pixels(img);
  Histogram h;
  for (auto v : img.pixels) ++h.counts[v];
  const double expected = static_cast<double>(img.size()) / 256.0;
  for (auto c : h.counts) {
    const double d = static_cast<double>(c) - expected;
    h.chi_square += d * d / expected;
  }
  h.p_value = h.chi_square <= 0.0 ? 1.0 : boost::math::gamma_q(255.0 / 2.0, h.chi_square / 2.0);
  return h;
}

void write_histogram_csv(std::ostream& out, const Histogram& h) {
  out << "level,count\n";
  for (std::size_t i = 0; i < h.counts.size(); ++i) out << i << ',' << h.counts[i] << '\n';
}

GlcmConfig GlcmConfig::graycomatrix_defaults() {
  GlcmConfig c;
  c.levels = 8;
  c.gray_low = 0.0;
  c.gray_high = 1.0;
  c.symmetric = false;
  return c;
}

Glcm build_glcm(const GrayImage& img, const GlcmConfig& config) {
  require_pixels(img);
  if (config.levels < 2) throw Error(Errc::InvalidArgument, "GLCM needs at least 2 levels");
  if (!(config.gray_high > config.gray_low)) throw Error(Errc::InvalidArgument, "gray_high must exceed gray_low");
  if (config.row_offset == 0 && config.col_offset == 0) throw Error(Errc::InvalidArgument, "offset must be nonzero");

  const auto levels = static_cast<std::size_t>(config.levels);
  std::vector<double> counts(levels * levels, 0.0);
  double total = 0.0;
  const auto h = static_cast<long>(img.height);
  const auto w = static_cast<long>(img.width);
  for (long r = 0; r < h; ++r)
    for (long c = 0; c < w; ++c) {
      const long r2 = r + config.row_offset;
      const long c2 = c + config.col_offset;
      if (r2 < 0 || r2 >= h || c2 < 0 || c2 >= w) continue;
      const auto a = level_of(img.at(static_cast<std::size_t>(r), static_cast<std::size_t>(c)), config);
      const auto b = level_of(img.at(static_cast<std::size_t>(r2), static_cast<std::size_t>(c2)), config);
      counts[a * levels + b] += 1.0;
      total += 1.0;
      if (config.symmetric) {
        counts[b * levels + a] += 1.0;
        total += 1.0;
      }
    }
  if (total == 0.0) throw Error(Errc::DegenerateImage, "no pixel pairs at the requested offset");
  for (auto& v : counts) v /= total;
  return {config.levels, std::move(counts)};
}

GlcmFeatures glcm_features(const Glcm& g) {
  GlcmFeatures f;
  double mu_a = 0.0, mu_b = 0.0;
  for (int a = 0; a < g.levels; ++a)
    for (int b = 0; b < g.levels; ++b) {
      const double p = g(a, b);
      mu_a += a * p;
      mu_b += b * p;
      const double d = std::abs(a - b);
      f.contrast += d * d * p;
      f.homogeneity += p / (1.0 + d);
      f.energy += p * p;
    }
  double var_a = 0.0, var_b = 0.0, cov = 0.0;
  for (int a = 0; a < g.levels; ++a)
    for (int b = 0; b < g.levels; ++b) {
      const double p = g(a, b);
      var_a += (a - mu_a) * (a - mu_a) * p;
      var_b += (b - mu_b) * (b - mu_b) * p;
      cov += (a - mu_a) * (b - mu_b) * p;
    }
  if (var_a > 0.0 && var_b > 0.0) f.correlation = cov / std::sqrt(var_a * var_b);
  return f;
}

GlcmFeatures glcm_features(const GrayImage& img, const GlcmConfig& config) {
  return glcm_features(build_glcm(img, config));
}

NpcrUaci npcr_uaci(const GrayImage& a, const GrayImage& b) {
  require_pixels(a);
  require_pixels(b);
  if (a.width != b.width || a.height != b.height)
    throw Error(Errc::DimensionMismatch, std::to_string(a.width) + "x" + std::to_string(a.height) + " vs " +
                                             std::to_string(b.width) + "x" + std::to_string(b.height));
  std::uint64_t differing = 0;
  std::uint64_t intensity = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const int d = std::abs(static_cast<int>(a.pixels[i]) - static_cast<int>(b.pixels[i]));
    differing += d != 0;
    intensity += static_cast<std::uint64_t>(d);
  }
  const auto n = static_cast<double>(a.size());
  return {100.0 * static_cast<double>(differing) / n, 100.0 * static_cast<double>(intensity) / (255.0 * n)};
}

void to_json(nlohmann::json& j, const Histogram& h) {
  j = {{"counts", h.counts}, {"chi_square", h.chi_square}, {"p_value", h.p_value}};
}

void to_json(nlohmann::json& j, const GlcmConfig& c) {
  j = {{"levels", c.levels},         {"gray_low", c.gray_low},     {"gray_high", c.gray_high},
       {"symmetric", c.symmetric}, {"row_offset", c.row_offset}, {"col_offset", c.col_offset}};
}

void to_json(nlohmann::json& j, const GlcmFeatures& f) {
  j = {{"contrast", f.contrast}, {"homogeneity", f.homogeneity}, {"energy", f.energy}};
  if (f.correlation) j["correlation"] = *f.correlation;
  else j["correlation"] = nullptr;
}

void to_json(nlohmann::json& j, const NpcrUaci& n) { j = {{"npcr", n.npcr}, {"uaci", n.uaci}}; }

}  // namespace sfspn
