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
#include <string>
#include <string_view>

#include "slimslide/codecs.hpp"
#include "slimslide/pyramid.hpp"
#include "slimslide/segmentation.hpp"

namespace slimslide {

/// Synthetic H&E-like slide. Tissue is a band across the top of level 0
/// whose lower edge is wavy and stays inside the last tissue tile row; the
/// bottom round(glass_tile_frac * tiles_down) tile rows are pure glass.
struct SynthSpec {
  std::uint64_t seed = 0;
  int width = 2048;
  int height = 2048;
  int n_levels = 4;
  int tile_px = 256;
  double glass_tile_frac = 0.5;
  int blob_count = 8;
  int glass_noise_amp = 8;  // 0..20, uniform +-amp per channel
  int artifact_lines = 0;   // dark 1 px lines drawn on glass only
  double base_magnification = 40.0;
  CodecSpec tile_codec = CodecSpec::jpeg(90);

  /// Throws Error(kInvalidSpec).
  void validate() const;
  [[nodiscard]] std::string to_json() const;
  /// Missing keys keep their defaults.
  static SynthSpec from_json(std::string_view json);
};

struct SynthSlide {
  TiledPyramid pyramid;
  BinaryMask ground_truth;  // level 0 resolution, exact by construction
  double glass_tile_frac = 0.0;  // achieved share of all-glass tiles at level 0
};

inline constexpr Rgb kSynthGlass{240, 240, 238};
inline constexpr Rgb kSynthEosin{226, 140, 186};
inline constexpr Rgb kSynthHematoxylin{104, 64, 150};
inline constexpr Rgb kSynthArtifact{70, 70, 70};
inline constexpr int kSynthTissueTexture = 12;

/// Deterministic in `spec`: equal specs give byte-identical pyramids.
SynthSlide generate_slide(const SynthSpec& spec, unsigned threads = 0);

}  // namespace slimslide
