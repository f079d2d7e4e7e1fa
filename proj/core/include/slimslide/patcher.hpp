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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "slimslide/codecs.hpp"
#include "slimslide/glass_policy.hpp"
#include "slimslide/image.hpp"
#include "slimslide/pyramid.hpp"
#include "slimslide/segmentation.hpp"

namespace slimslide {

struct PatchSpec {
  int patch_px = 256;
  double overlap_frac = 0.0;     // in [0, 0.5)
  double min_tissue_frac = 0.5;  // patches need strictly more tissue than this
  double magnification = 0.0;    // informational; 0 when taken from the level
  Rgb pad_color = kWhite;

  /// floor(patch_px * overlap_frac).
  [[nodiscard]] int overlap_px() const noexcept;
  [[nodiscard]] int stride() const noexcept { return patch_px - overlap_px(); }
  void validate() const;
};

struct PatchOrigin {
  int x = 0;
  int y = 0;
  friend auto operator<=>(const PatchOrigin&, const PatchOrigin&) = default;
};

struct PatchRecord {
  int source_level = 0;
  int origin_x = 0;
  int origin_y = 0;
  RgbImage pixels;
  double tissue_frac = 0.0;
  double magnification = 0.0;
};

/// Row-major origins at multiples of the stride. The last row and column may
/// overhang the level; padding happens at read time.
std::vector<PatchOrigin> plan_patches(int level_w, int level_h, const PatchSpec& spec);

/// Reads every planned patch of `level`. With a mask, it is rescaled to the
/// level, tissue_frac is the tissue share of the full patch area (padding
/// counts as glass), and only patches with tissue_frac > min_tissue_frac are
/// kept.
std::vector<PatchRecord> extract_patches(const TiledPyramid& p, int level, const PatchSpec& spec,
                                         const BinaryMask* mask = nullptr, unsigned threads = 0);

/// Levels need at least this many tissue pixels before patches are taken
/// from them (two 512x512 patches worth).
inline constexpr std::size_t kMinLevelTissuePixels = 2u * 512u * 512u;

int select_level_with_fallback(int requested_level, std::size_t tissue_pixels_at_level);
/// Rescales `mask` to the requested level and counts tissue pixels there.
int select_level_with_fallback(const TiledPyramid& p, int requested_level, const BinaryMask& mask);

/// Level whose magnification is nearest to `magnification`; throws
/// kMagnificationUnavailable when the relative deviation exceeds 25%.
int level_for_magnification(const TiledPyramid& p, double magnification);

/// Uniform sample without replacement of `n_per_magnification` patches from
/// each list, deterministic in `seed`. Output is grouped by ascending
/// magnification, each group in original list order.
std::vector<PatchRecord> build_balanced_set(const std::map<double, std::vector<PatchRecord>>& sets,
                                            std::size_t n_per_magnification, std::uint64_t seed);

/// Reassembles a level from patches planned with `spec`; overlapping pixels
/// are averaged (rounded half up). Throws kMissingPatch if any planned origin
/// is absent.
RgbImage stitch(const std::vector<PatchRecord>& patches, int level_w, int level_h, const PatchSpec& spec);

struct PatchFileEntry {
  int level = 0;
  int origin_x = 0;
  int origin_y = 0;
  std::string png_file;  // relative to the pyramid directory
  std::uint64_t png_bytes = 0;
  double tissue_frac = 0.0;
  std::string encoded_file;  // empty unless an encode codec was requested
  std::string side_file;     // mock learned codec only
  std::uint64_t encoded_bytes = 0;
};

struct PatchPyramidOptions {
  std::optional<CodecSpec> encode;  // also store a compressed copy of every patch
  std::uint64_t seed = 0;           // recorded in the manifest
  unsigned threads = 0;
};

struct PatchPyramidManifest {
  PatchSpec spec;
  GlassPolicy policy;
  std::optional<CodecSpec> codec;
  std::uint64_t seed = 0;
  std::vector<PatchFileEntry> files;  // sorted by level, then origin (y, x)
  std::vector<std::size_t> level_counts;
  std::vector<double> level_magnifications;
  std::uint64_t total_png_bytes = 0;
  std::uint64_t total_encoded_bytes = 0;

  [[nodiscard]] std::string to_json() const;
  static PatchPyramidManifest from_json(std::string_view json);
};

inline constexpr const char* kManifestFileName = "manifest.json";

/// Patches every level into `out_dir/level_<k>/x<x>_y<y>.png` and writes
/// `out_dir/manifest.json`. Every planned patch is written (no tissue filter)
/// except all-glass patches under EmptyTiles. Encoded copies go to
/// `out_dir/encoded/level_<k>/`. Non-KeepGlass policies need a mask.
PatchPyramidManifest build_patch_pyramid(const TiledPyramid& p, const PatchSpec& spec, const BinaryMask* mask,
                                         const GlassPolicy& policy, const std::filesystem::path& out_dir,
                                         const PatchPyramidOptions& options = {});

PatchPyramidManifest load_patch_manifest(const std::filesystem::path& dir);
/// Decodes the PNG patches listed in a manifest.
std::vector<PatchRecord> load_patch_records(const std::filesystem::path& dir, const PatchPyramidManifest& manifest);

}  // namespace slimslide
