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

// Internal codec entry points shared by the codec facade and the TIFF tile
// layer. All functions throw slimslide::Error.

#include <cstddef>
#include <span>

#include "slimslide/codecs.hpp"

namespace slimslide::detail {

Bytes jpeg_encode(const RgbImage& img, int quality, ChromaSubsampling chroma);
RgbImage jpeg_decode(std::span<const std::uint8_t> data);

Bytes png_encode(const RgbImage& img);
RgbImage png_decode(std::span<const std::uint8_t> data);

/// zlib stream of arbitrary bytes (TIFF Compression=8 payload).
Bytes deflate_bytes(std::span<const std::uint8_t> raw, int level);
/// Inflates exactly `expected_size` bytes or throws kDecodeFailure.
Bytes inflate_bytes(std::span<const std::uint8_t> compressed, std::size_t expected_size);

EncodedPatch mock_encode(const RgbImage& img, int quality_level);
RgbImage mock_decode(const EncodedPatch& encoded);

bool jpeg2000_available();
Bytes jpeg2000_encode(const RgbImage& img, double target_psnr_db);
RgbImage jpeg2000_decode(std::span<const std::uint8_t> data);

}  // namespace slimslide::detail
