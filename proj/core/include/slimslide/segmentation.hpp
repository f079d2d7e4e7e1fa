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
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "slimslide/image.hpp"
#include "slimslide/pyramid.hpp"

namespace slimslide {

struct SegmentationConfig {
  double threshold = 85.0;  // pixels strictly farther than this from the reference are tissue
  int closing_radius = 9;
  Rgb reference_color = kWhite;

  void validate() const;
};

/// Tissue (true) / glass (false) bitmap tagged with the magnification it was
/// computed at.
class BinaryMask {
 public:
  BinaryMask() = default;
  /// Throws Error(kInvalidDimensions) unless width, height >= 1.
  BinaryMask(int width, int height, double magnification, bool fill = false);

  [[nodiscard]] int width() const noexcept { return width_; }
  [[nodiscard]] int height() const noexcept { return height_; }
  [[nodiscard]] double magnification() const noexcept { return magnification_; }
  void set_magnification(double m) noexcept { magnification_ = m; }

  [[nodiscard]] bool at(int x, int y) const noexcept { return bits_[index(x, y)] != 0; }
  void set(int x, int y, bool tissue) noexcept { bits_[index(x, y)] = tissue ? 1 : 0; }

  /// One byte per pixel, 0 or 1, row-major.
  [[nodiscard]] std::span<const std::uint8_t> bits() const noexcept { return bits_; }
  [[nodiscard]] std::span<std::uint8_t> bits() noexcept { return bits_; }

  [[nodiscard]] std::size_t tissue_count() const noexcept;
  [[nodiscard]] double tissue_fraction() const noexcept;
  /// Tissue pixels inside the rectangle, clipped to the mask.
  [[nodiscard]] std::size_t tissue_count_in(int x, int y, int w, int h) const noexcept;

  /// Same bits and size; magnification is metadata and not compared.
  friend bool operator==(const BinaryMask& a, const BinaryMask& b) noexcept {
    return a.width_ == b.width_ && a.height_ == b.height_ && a.bits_ == b.bits_;
  }

 private:
  [[nodiscard]] std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  double magnification_ = 1.0;
  std::vector<std::uint8_t> bits_;
};

/// Euclidean distance in RGB space between `pixel` and `reference`.
double color_distance(Rgb pixel, Rgb reference = kWhite) noexcept;

/// Per-pixel colour thresholding only; no morphology.
BinaryMask threshold_segment(const RgbImage& img, const SegmentationConfig& cfg, double magnification = 1.0);

/// Disk structuring element: offsets with dx^2 + dy^2 <= radius^2. Pixels
/// outside the mask count as glass.
BinaryMask dilate(const BinaryMask& m, int radius);
BinaryMask erode(const BinaryMask& m, int radius);
/// Dilation followed by erosion, evaluated as if the mask were surrounded by
/// unbounded glass, so the result always contains the input. Radius 0 is the
/// identity.
BinaryMask morphological_close(const BinaryMask& m, int radius);

/// Threshold + closing on one pyramid level.
BinaryMask segment_level(const TiledPyramid& p, int level, const SegmentationConfig& cfg);
/// Threshold + closing on the lowest-resolution level.
BinaryMask segment_slide(const TiledPyramid& p, const SegmentationConfig& cfg);

/// 8-bit grayscale PNG, 0 = glass, 255 = tissue, with a tEXt chunk
/// `magnification`.
void save_mask(const BinaryMask& m, const std::filesystem::path& path);
/// Any non-zero sample is tissue. Without a `magnification` text chunk the
/// fallback is used, and its absence is an error.
BinaryMask load_mask(const std::filesystem::path& path, std::optional<double> fallback_magnification = std::nullopt);

/// Nearest-neighbour rescale; magnification scales with the width ratio.
BinaryMask rescale_mask(const BinaryMask& m, int target_w, int target_h);

/// 2|A n B| / (|A| + |B|), 1 when both are empty. Throws kDimensionMismatch.
double dice(const BinaryMask& a, const BinaryMask& b);

}  // namespace slimslide
