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

// Deterministic stand-in for a learned codec: it produces the same two
// bytestrings per patch (payload + side information) that an
// entropy-bottleneck model writes, so the patch-pyramid and size-accounting
// paths can be exercised without a neural network.
//
// Encoding:
//   1. 2x box-filter downsample (odd edges average what exists).
//   2. Per-channel uniform quantization, index = round(v / step), with
//      step = mock_quantization_step(level).
//   3. Planar R, G, B index planes deflated at level 9 -> primary bytes.
//   4. 16-byte side header: "SLMK", version, level, step, 0, width, height
//      (little-endian u32).
// Decoding dequantizes (index * step, clamped to 255) and upsamples by pixel
// replication, so 2x2-block images reconstruct exactly at step 1.

#include <algorithm>
#include <array>
#include <cstring>

#include "codecs/backends.hpp"
#include "slimslide/error.hpp"

namespace slimslide::detail {
namespace {

constexpr std::array<std::uint8_t, 4> kMagic = {'S', 'L', 'M', 'K'};
constexpr std::uint8_t kVersion = 1;
constexpr std::size_t kSideSize = 16;

void put_u32(std::uint8_t* p, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) p[i] = static_cast<std::uint8_t>(v >> (8 * i));
}

std::uint32_t get_u32(const std::uint8_t* p) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(p[i]) << (8 * i);
  return v;
}

}  // namespace

EncodedPatch mock_encode(const RgbImage& img, int quality_level) {
  const int step = mock_quantization_step(quality_level);
  const RgbImage small = downsample_box2(img);
  const std::size_t plane = small.pixel_count();
  Bytes planes(plane * 3);
  const auto src = small.bytes();
  for (std::size_t i = 0; i < plane; ++i) {
    for (std::size_t c = 0; c < 3; ++c) {
      const int v = src[i * 3 + c];
      planes[c * plane + i] = static_cast<std::uint8_t>((v + step / 2) / step);
    }
  }

  EncodedPatch out;
  out.primary = deflate_bytes(planes, 9);
  Bytes side(kSideSize, 0);
  std::copy(kMagic.begin(), kMagic.end(), side.begin());
  side[4] = kVersion;
  side[5] = static_cast<std::uint8_t>(quality_level);
  side[6] = static_cast<std::uint8_t>(step);
  put_u32(&side[8], static_cast<std::uint32_t>(img.width()));
  put_u32(&side[12], static_cast<std::uint32_t>(img.height()));
  out.side = std::move(side);
  out.width = img.width();
  out.height = img.height();
  return out;
}

RgbImage mock_decode(const EncodedPatch& encoded) {
  if (!encoded.side || encoded.side->size() != kSideSize) {
    fail(ErrorCode::kDecodeFailure, "mock codec side bytestring missing or truncated");
  }
  const Bytes& side = *encoded.side;
  if (!std::equal(kMagic.begin(), kMagic.end(), side.begin()) || side[4] != kVersion) {
    fail(ErrorCode::kDecodeFailure, "mock codec side bytestring has a bad header");
  }
  const int step = side[6];
  if (step < 1 || step > 64) fail(ErrorCode::kDecodeFailure, "mock codec quantization step out of range");
  const auto width = get_u32(&side[8]);
  const auto height = get_u32(&side[12]);
  if (width == 0 || height == 0 || width > (1u << 20) || height > (1u << 20)) {
    fail(ErrorCode::kDecodeFailure, "mock codec dimensions out of range");
  }
  const int w = static_cast<int>(width);
  const int h = static_cast<int>(height);
  const int sw = (w + 1) / 2;
  const int sh = (h + 1) / 2;
  const std::size_t plane = static_cast<std::size_t>(sw) * static_cast<std::size_t>(sh);
  const Bytes planes = inflate_bytes(encoded.primary, plane * 3);

  RgbImage out(w, h);
  for (int y = 0; y < h; ++y) {
    std::uint8_t* row = out.row(y);
    const std::size_t srow = static_cast<std::size_t>(y / 2) * static_cast<std::size_t>(sw);
    for (int x = 0; x < w; ++x) {
      const std::size_t si = srow + static_cast<std::size_t>(x / 2);
      for (std::size_t c = 0; c < 3; ++c) {
        row[static_cast<std::size_t>(x) * 3 + c] =
            static_cast<std::uint8_t>(std::min(255, planes[c * plane + si] * step));
      }
    }
  }
  return out;
}

}  // namespace slimslide::detail
