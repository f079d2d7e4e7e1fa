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

#include <cmath>
#include <string>

#include "slimslide/error.hpp"
#include "slimslide/segmentation.hpp"

namespace slimslide {

void SegmentationConfig::validate() const {
  if (!(threshold >= 0.0)) fail(ErrorCode::kInvalidArgument, "segmentation threshold must be >= 0");
  if (closing_radius < 0) fail(ErrorCode::kInvalidArgument, "closing radius must be >= 0");
}

double color_distance(Rgb pixel, Rgb reference) noexcept {
  const double dr = static_cast<double>(pixel.r) - reference.r;
  const double dg = static_cast<double>(pixel.g) - reference.g;
  const double db = static_cast<double>(pixel.b) - reference.b;
  return std::sqrt(dr * dr + dg * dg + db * db);
}

BinaryMask threshold_segment(const RgbImage& img, const SegmentationConfig& cfg, double magnification) {
  cfg.validate();
  BinaryMask mask(img.width(), img.height(), magnification);
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      mask.set(x, y, color_distance(img.at(x, y), cfg.reference_color) > cfg.threshold);
    }
  }
  return mask;
}

BinaryMask segment_level(const TiledPyramid& p, int level_index, const SegmentationConfig& cfg) {
  const PyramidLevel& level = p.level(level_index);
  const RgbImage img = read_region(p, level_index, 0, 0, level.width_px, level.height_px);
  return morphological_close(threshold_segment(img, cfg, level.magnification), cfg.closing_radius);
}

BinaryMask segment_slide(const TiledPyramid& p, const SegmentationConfig& cfg) {
  if (p.level_count() < 1) fail(ErrorCode::kInvalidLevel, "pyramid has no levels");
  return segment_level(p, p.level_count() - 1, cfg);
}

}  // namespace slimslide
