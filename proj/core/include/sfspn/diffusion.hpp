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

#include <cstddef>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "sfspn/cipher.hpp"
#include "sfspn/image.hpp"

namespace sfspn {

/// Encrypts the raster and returns the first width*height ciphertext bytes as
/// an image of the same shape.
GrayImage encrypt_image(const GrayImage& img, const CipherKeyBundle& keys, const SBoxFamily& family,
                        int rounds = kDefaultRounds);

struct PixelChangeResult {
  std::size_t row = 0;
  std::size_t col = 0;
  NpcrUaci metrics;
};

/// One pixel near the start, one in the middle, one at the end.
std::vector<std::pair<std::size_t, std::size_t>> pixel_change_locations(const GrayImage& img);

/// For each location, changes that pixel by +1 mod 256 and compares the two
/// cipher images.
std::vector<PixelChangeResult> pixel_change_protocol(const GrayImage& img, const CipherKeyBundle& keys,
                                                     const SBoxFamily& family, int rounds = kDefaultRounds);

struct KeySensitivity {
  NpcrUaci encryption;  // cipher images under k1 and k1 with one bit flipped
  NpcrUaci decryption;  // plaintext vs decryption with the flipped k1
};

/// Flips the most significant bit of the first k1 byte.
CipherKeyBundle flip_k1_bit(const CipherKeyBundle& keys, std::size_t bit = 0);

KeySensitivity key_sensitivity(const GrayImage& img, const CipherKeyBundle& keys, const SBoxFamily& family,
                               int rounds = kDefaultRounds);

void to_json(nlohmann::json& j, const PixelChangeResult& r);
void to_json(nlohmann::json& j, const KeySensitivity& k);

}  // namespace sfspn
