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

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "slimslide/codecs.hpp"
#include "slimslide/glass_policy.hpp"
#include "slimslide/pyramid.hpp"
#include "slimslide/segmentation.hpp"

namespace slimslide {

enum class TileKind { kAllGlass, kMixed, kAllTissue };
std::string_view to_string(TileKind kind);

struct TileClass {
  TileKind kind = TileKind::kAllGlass;
  double tissue_frac = 0.0;
};

/// Tissue share of the tile's in-level area. `level_mask` must have the
/// level's dimensions.
TileClass classify_tile(const BinaryMask& level_mask, const PyramidLevel& level, const TileRef& tile);

/// Pixels that `policy` would store for a tile whose top-left corner sits at
/// (x0, y0) of the level, or nullopt when the tile becomes empty.
std::optional<RgbImage> policy_pixels(RgbImage tile_pixels, const TileClass& tile_class, const BinaryMask& level_mask,
                                      int x0, int y0, const GlassPolicy& policy);

/// policy_pixels() followed by encode_tile().
TileStatus apply_policy(const RgbImage& tile_pixels, const TileClass& tile_class, const BinaryMask& level_mask,
                        int x0, int y0, const GlassPolicy& policy, const CodecSpec& codec);

/// Wall-clock seconds per stage of a conversion.
struct RuntimeBreakdown {
  double read_s = 0.0;
  double decompress_s = 0.0;
  double segment_s = 0.0;
  double compress_s = 0.0;
  double write_s = 0.0;
  double other_s = 0.0;
  double total_s = 0.0;

  [[nodiscard]] double named_sum() const noexcept { return read_s + decompress_s + segment_s + compress_s + write_s; }
};

/// Report column names, in order: read, decompress, segment, compress,
/// write, other, total.
inline constexpr std::array<std::string_view, 7> kRuntimeColumns = {
    "Read tiles (I/O)", "Decompress tiles", "Segmentation", "Compress", "Write (I/O)", "Other", "Total"};

struct NoMask {};
/// Colour thresholding plus closing at the level nearest `magnification`,
/// or the lowest-resolution level when none is within 25%.
struct ThresholdMask {
  SegmentationConfig config;
  double magnification = 2.5;
};
struct ExternalMask {
  std::filesystem::path path;
};
using MaskSource = std::variant<NoMask, ThresholdMask, ExternalMask>;

struct TileClassCounts {
  std::size_t all_glass = 0;
  std::size_t mixed = 0;
  std::size_t all_tissue = 0;
  std::size_t empty_written = 0;
};

struct RecompressOptions {
  unsigned threads = 0;
  std::optional<std::uint64_t> baseline_bytes;  // enables size_reduction_pct
};

struct RecompressResult {
  std::uint64_t size_bytes = 0;
  RuntimeBreakdown runtime;
  std::optional<std::uint64_t> baseline_bytes;
  std::optional<double> size_reduction_pct;
  TileClassCounts tiles;
  GlassPolicy policy;
  CodecSpec codec;
  int mask_level = -1;  // -1 without a mask
  double mask_magnification = 0.0;
  double tissue_fraction = 1.0;  // at the mask level
};

/// Decodes every tile once, segments once, then classifies, applies `policy`
/// and re-encodes every tile with `codec` before writing `out_path`.
/// Throws kMaskRequired when a non-KeepGlass policy has no mask source.
RecompressResult recompress_slide(const TiledPyramid& src, const GlassPolicy& policy, const CodecSpec& codec,
                                  const MaskSource& mask_source, const std::filesystem::path& out_path,
                                  const RecompressOptions& options = {});
/// Same, with opening `src_path` timed as the read stage.
RecompressResult recompress_slide(const std::filesystem::path& src_path, const GlassPolicy& policy,
                                  const CodecSpec& codec, const MaskSource& mask_source,
                                  const std::filesystem::path& out_path, const RecompressOptions& options = {});

/// (1 - new / baseline) * 100. Throws kInvalidArgument when baseline is 0.
double size_reduction(std::uint64_t new_bytes, std::uint64_t baseline_bytes);

/// Level used by ThresholdMask for `magnification`.
int mask_level_for(const TiledPyramid& p, double magnification);

std::string recompress_report_json(const RecompressResult& r);
std::string recompress_report_csv(const RecompressResult& r);

}  // namespace slimslide
