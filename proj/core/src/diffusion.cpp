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

#include "sfspn/diffusion.hpp"

#include <nlohmann/json.hpp>

#include "sfspn/error.hpp"

namespace sfspn {
namespace {

GrayImage as_image(std::vector<std::uint8_t> bytes, const GrayImage& shape) {
  GrayImage out;
  out.width = shape.width;
  out.height = shape.height;
  bytes.resize(shape.size());
  out.pixels = std::move(bytes);
  return out;
}

}  // namespace

GrayImage encrypt_image(const GrayImage& img, const CipherKeyBundle& keys, const SBoxFamily& family, int rounds) {
  if (img.empty()) throw Error(Errc::EmptyImage, "image has no pixels");
  return as_image(encrypt(img.pixels, keys, family, rounds).blocks, img);
}

std::vector<std::pair<std::size_t, std::size_t>> pixel_change_locations(const GrayImage& img) {
  if (img.empty()) throw Error(Errc::EmptyImage, "image has no pixels");
  return {{0, 0}, {img.height / 2, img.width / 2}, {img.height - 1, img.width - 1}};
}

std::vector<PixelChangeResult> pixel_change_protocol(const GrayImage& img, const CipherKeyBundle& keys,
                                                     const SBoxFamily& family, int rounds) {
  const auto reference = encrypt_image(img, keys, family, rounds);
  std::vector<PixelChangeResult> results;
  for (const auto& [row, col] : pixel_change_locations(img)) {
    auto changed = img;
    changed.at(row, col) = static_cast<std::uint8_t>(changed.at(row, col) + 1);
    results.push_back({row, col, npcr_uaci(reference, encrypt_image(changed, keys, family, rounds))});
  }
  return results;
}

CipherKeyBundle flip_k1_bit(const CipherKeyBundle& keys, std::size_t bit) {
  if (bit >= 128) throw Error(Errc::InvalidArgument, "k1 has 128 bits");
  auto flipped = keys;
  flipped.k1.bytes[bit / 8] ^= static_cast<std::uint8_t>(0x80u >> (bit % 8));
  return flipped;
}

KeySensitivity key_sensitivity(const GrayImage& img, const CipherKeyBundle& keys, const SBoxFamily& family,
                               int rounds) {
  const auto other = flip_k1_bit(keys);
  KeySensitivity out;
  const auto ct = encrypt(img.pixels, keys, family, rounds);
  out.encryption = npcr_uaci(as_image(ct.blocks, img), encrypt_image(img, other, family, rounds));
  out.decryption = npcr_uaci(img, as_image(decrypt(ct, other, family), img));
  return out;
}

void to_json(nlohmann::json& j, const PixelChangeResult& r) {
  j = {{"row", r.row}, {"col", r.col}, {"npcr", r.metrics.npcr}, {"uaci", r.metrics.uaci}};
}

void to_json(nlohmann::json& j, const KeySensitivity& k) {
  j = {{"encryption", k.encryption}, {"decryption", k.decryption}};
}

}  // namespace sfspn
