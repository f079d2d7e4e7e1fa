// Copyright 2026 The slimslide Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "slimslide/image.hpp"
#include "slimslide/io.hpp"

namespace slimslide::png {

using TextChunks = std::vector<std::pair<std::string, std::string>>;

/// 8-bit RGB, or an indexed-colour PNG when the image has at most 256
/// colours. Both decode to identical pixels.
Bytes encode_rgb(const RgbImage& img, int zlib_level = 6);
/// Decodes any PNG colour type to 8-bit RGB (alpha dropped, gray replicated).
RgbImage decode_rgb(std::span<const std::uint8_t> png);

/// Grayscale raster at 8 or 16 bits per sample.
struct GrayImage {
  int width = 0;
  int height = 0;
  int bit_depth = 8;
  std::vector<std::uint16_t> samples;
  TextChunks text;

  [[nodiscard]] std::optional<std::string> find_text(std::string_view key) const;
};

Bytes encode_gray(const GrayImage& img, int zlib_level = 6);
/// Throws Error(kDimensionMismatch) if the stream is not a plain grayscale PNG.
GrayImage decode_gray(std::span<const std::uint8_t> png);

}  // namespace slimslide::png
