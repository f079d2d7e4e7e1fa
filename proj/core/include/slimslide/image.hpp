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

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace slimslide {

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  friend bool operator==(const Rgb&, const Rgb&) = default;
};

inline constexpr Rgb kWhite{255, 255, 255};

/// Hex form `RRGGBB` (upper case), as used in TIFF ImageDescription metadata.
std::string to_hex(Rgb color);
/// Parses `RRGGBB`; throws Error(kInvalidArgument) otherwise.
Rgb rgb_from_hex(std::string_view hex);

/// Interleaved 8-bit RGB raster, row-major with no row padding.
class RgbImage {
 public:
  RgbImage() = default;
  RgbImage(int width, int height, Rgb fill = kWhite);

  [[nodiscard]] int width() const noexcept { return width_; }
  [[nodiscard]] int height() const noexcept { return height_; }
  [[nodiscard]] bool empty() const noexcept { return width_ == 0 || height_ == 0; }
  [[nodiscard]] std::size_t pixel_count() const noexcept {
    return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
  }

  [[nodiscard]] Rgb at(int x, int y) const noexcept {
    const std::uint8_t* p = &data_[offset(x, y)];
    return {p[0], p[1], p[2]};
  }
  void set(int x, int y, Rgb c) noexcept {
    std::uint8_t* p = &data_[offset(x, y)];
    p[0] = c.r;
    p[1] = c.g;
    p[2] = c.b;
  }

  [[nodiscard]] std::span<const std::uint8_t> bytes() const noexcept { return data_; }
  [[nodiscard]] std::span<std::uint8_t> bytes() noexcept { return data_; }
  [[nodiscard]] const std::uint8_t* row(int y) const noexcept { return &data_[offset(0, y)]; }
  [[nodiscard]] std::uint8_t* row(int y) noexcept { return &data_[offset(0, y)]; }

  void fill(Rgb c) noexcept;

  /// Copies a w×h window starting at (x, y); pixels outside this image take `pad`.
  [[nodiscard]] RgbImage crop(int x, int y, int w, int h, Rgb pad = kWhite) const;
  /// Writes `src` with its top-left corner at (x, y), clipping to this image.
  void blit(const RgbImage& src, int x, int y);

  friend bool operator==(const RgbImage&, const RgbImage&) = default;

 private:
  [[nodiscard]] std::size_t offset(int x, int y) const noexcept {
    return (static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
            static_cast<std::size_t>(x)) * 3;
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> data_;
};

/// 2× box-filter reduction; odd trailing rows/columns average what exists.
RgbImage downsample_box2(const RgbImage& img);

}  // namespace slimslide
