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

// Classic (32-bit offset) TIFF constants and the slimslide ImageDescription
// convention:
//
//   slimslide background=RRGGBB magnification=<base> codec=<label>
//
// Whitespace-separated key=value tokens. Readers ignore unknown tokens and
// also accept an Aperio-style "AppMag = <x>" for the base magnification.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "slimslide/codecs.hpp"
#include "slimslide/image.hpp"

namespace slimslide::tiff {

enum Tag : std::uint16_t {
  kNewSubfileType = 254,
  kImageWidth = 256,
  kImageLength = 257,
  kBitsPerSample = 258,
  kCompression = 259,
  kPhotometric = 262,
  kImageDescription = 270,
  kStripOffsets = 273,
  kSamplesPerPixel = 277,
  kPlanarConfiguration = 284,
  kTileWidth = 322,
  kTileLength = 323,
  kTileOffsets = 324,
  kTileByteCounts = 325,
  kYCbCrSubsampling = 530,
};

enum Type : std::uint16_t {
  kByte = 1,
  kAscii = 2,
  kShort = 3,
  kLong = 4,
  kRational = 5,
  kSByte = 6,
  kUndefined = 7,
  kSShort = 8,
  kSLong = 9,
  kSRational = 10,
  kFloat = 11,
  kDouble = 12,
};

std::uint32_t type_size(std::uint16_t type);

inline constexpr std::uint16_t kCompressionJpeg = 7;
inline constexpr std::uint16_t kCompressionDeflate = 8;
inline constexpr std::uint16_t kCompressionJpeg2000 = 34712;
inline constexpr std::uint16_t kCompressionJpegXl = 50002;
inline constexpr std::uint16_t kPhotometricRgb = 2;
/// JPEG tiles hold YCbCr; libtiff rejects subsampled JPEG under RGB.
inline constexpr std::uint16_t kPhotometricYCbCr = 6;

/// TIFF Compression code for a tile codec; throws kUnsupportedCodec for
/// families with no TIFF representation.
std::uint16_t compression_code(CodecFamily family);
std::optional<CodecFamily> family_from_compression(std::uint16_t code);

struct Description {
  std::optional<Rgb> background;
  std::optional<double> magnification;
  std::optional<CodecSpec> codec;
};

std::string format_description(Rgb background, double magnification, const CodecSpec& codec);
Description parse_description(std::string_view text);

}  // namespace slimslide::tiff
