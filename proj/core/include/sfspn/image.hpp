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
#include <optional>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace sfspn {

/// 8-bit grayscale raster, row-major.
struct GrayImage {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint8_t> pixels;

  GrayImage() = default;
  GrayImage(std::size_t w, std::size_t h, std::uint8_t fill = 0) : width(w), height(h), pixels(w * h, fill) {}

  std::size_t size() const { return pixels.size(); }
  bool empty() const { return pixels.empty(); }
  std::uint8_t& at(std::size_t row, std::size_t col) { return pixels[row * width + col]; }
  std::uint8_t at(std::size_t row, std::size_t col) const { return pixels[row * width + col]; }

  friend bool operator==(const GrayImage&, const GrayImage&) = default;
};

// Binary PGM (P5, maxval 255). Comments in the header are skipped.
GrayImage read_pgm(std::istream& in);
GrayImage read_pgm_file(const std::filesystem::path& path);
void write_pgm(std::ostream& out, const GrayImage& img);
void write_pgm_file(const GrayImage& img, const std::filesystem::path& path);

/// Smooth gradients, discs and bars with mild texture; stands in for a
/// natural photograph. Deterministic in seed.
GrayImage make_test_image(std::size_t width, std::size_t height, std::uint64_t seed = 0);

/// Throws EmptyImage.
double shannon_entropy(const GrayImage& img);

struct Histogram {
  std::array<std::uint64_t, 256> counts{};
  double chi_square = 0.0;  // against the uniform expectation, 255 dof
  double p_value = 0.0;
};

/// Throws EmptyImage.
Histogram histogram(const GrayImage& img);
void write_histogram_csv(std::ostream& out, const Histogram& h);

struct GlcmConfig {
  int levels = 256;
  // Gray value v lands in level floor(levels * (v - gray_low) / (gray_high - gray_low)),
  // clipped to [0, levels-1].
  double gray_low = 0.0;
  double gray_high = 256.0;
  bool symmetric = true;
  int row_offset = 0;
  int col_offset = 1;

  /// 8 levels over gray limits [0, 1], one-sided horizontal pairs: the
  /// graycomatrix defaults applied to raw 8-bit data.
  static GlcmConfig graycomatrix_defaults();
};

/// Normalized co-occurrence probabilities, levels x levels, row-major.
struct Glcm {
  int levels = 0;
  std::vector<double> p;

  double operator()(int a, int b) const {
    return p[static_cast<std::size_t>(a) * static_cast<std::size_t>(levels) + static_cast<std::size_t>(b)];
  }
};

/// Throws EmptyImage, and DegenerateImage when no pixel pair exists at the
/// offset.
Glcm build_glcm(const GrayImage& img, const GlcmConfig& config = {});

struct GlcmFeatures {
  std::optional<double> correlation;  // empty when a marginal has zero variance
  double contrast = 0.0;
  double homogeneity = 0.0;
  double energy = 0.0;
};

GlcmFeatures glcm_features(const Glcm& glcm);
GlcmFeatures glcm_features(const GrayImage& img, const GlcmConfig& config = {});

struct NpcrUaci {
  double npcr = 0.0;  // percent
  double uaci = 0.0;  // percent
};

/// Throws DimensionMismatch or EmptyImage.
NpcrUaci npcr_uaci(const GrayImage& a, const GrayImage& b);

void to_json(nlohmann::json& j, const Histogram& h);
void to_json(nlohmann::json& j, const GlcmConfig& c);
void to_json(nlohmann::json& j, const GlcmFeatures& f);
void to_json(nlohmann::json& j, const NpcrUaci& n);

}  // namespace sfspn
