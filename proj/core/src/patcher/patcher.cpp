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

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <string>

#include "slimslide/error.hpp"
#include "slimslide/parallel.hpp"
#include "slimslide/patcher.hpp"

namespace slimslide {
namespace {

/// Origins along one axis: 1 when the extent fits in a single patch, else
/// enough strides that the last patch reaches the end.
std::vector<int> axis_origins(int extent, int patch, int stride) {
  std::vector<int> out;
  if (extent <= patch) return {0};
  const int n = (extent - patch + stride - 1) / stride + 1;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out.push_back(i * stride);
  return out;
}

/// Uniform integer in [0, bound) by rejection, independent of the standard
/// library's distribution implementation.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t v = 0;
  do {
    v = rng();
  } while (v >= limit);
  return v % bound;
}

}  // namespace

int PatchSpec::overlap_px() const noexcept {
  return static_cast<int>(std::floor(static_cast<double>(patch_px) * overlap_frac));
}

void PatchSpec::validate() const {
  if (patch_px < 1) fail(ErrorCode::kInvalidArgument, "patch_px must be >= 1");
  if (!(overlap_frac >= 0.0 && overlap_frac < 0.5)) fail(ErrorCode::kInvalidArgument, "overlap_frac must be in [0, 0.5)");
  if (!(min_tissue_frac >= 0.0 && min_tissue_frac <= 1.0)) {
    fail(ErrorCode::kInvalidArgument, "min_tissue_frac must be in [0, 1]");
  }
  if (magnification < 0.0) fail(ErrorCode::kInvalidArgument, "magnification must be positive");
  if (stride() < 1) fail(ErrorCode::kInvalidArgument, "patch stride must be >= 1");
}

std::vector<PatchOrigin> plan_patches(int level_w, int level_h, const PatchSpec& spec) {
  spec.validate();
  if (level_w < 1 || level_h < 1) fail(ErrorCode::kInvalidDimensions, "level must be at least 1x1");
  const std::vector<int> xs = axis_origins(level_w, spec.patch_px, spec.stride());
  const std::vector<int> ys = axis_origins(level_h, spec.patch_px, spec.stride());
  std::vector<PatchOrigin> out;
  out.reserve(xs.size() * ys.size());
  for (int y : ys) {
    for (int x : xs) out.push_back({x, y});
  }
  return out;
}

std::vector<PatchRecord> extract_patches(const TiledPyramid& p, int level, const PatchSpec& spec,
                                         const BinaryMask* mask, unsigned threads) {
  const PyramidLevel& lv = p.level(level);
  const std::vector<PatchOrigin> origins = plan_patches(lv.width_px, lv.height_px, spec);
  std::optional<BinaryMask> level_mask;
  if (mask != nullptr) level_mask = rescale_mask(*mask, lv.width_px, lv.height_px);
  const double area = static_cast<double>(spec.patch_px) * static_cast<double>(spec.patch_px);
  const double magnification = spec.magnification > 0 ? spec.magnification : lv.magnification;

  std::vector<std::optional<PatchRecord>> slots(origins.size());
  parallel_for(origins.size(), threads, [&](std::size_t i) {
    const PatchOrigin o = origins[i];
    PatchRecord rec;
    rec.source_level = level;
    rec.origin_x = o.x;
    rec.origin_y = o.y;
    rec.magnification = magnification;
    if (level_mask) {
      rec.tissue_frac =
          static_cast<double>(level_mask->tissue_count_in(o.x, o.y, spec.patch_px, spec.patch_px)) / area;
      if (!(rec.tissue_frac > spec.min_tissue_frac)) return;
    } else {
      rec.tissue_frac = 1.0;
    }
    RgbImage pixels = read_region(p, level, o.x, o.y, spec.patch_px, spec.patch_px);
    // Pixels past the level edge take the patch padding colour rather than
    // the slide background.
    if (spec.pad_color != p.background_color()) {
      const int inside_w = std::min(spec.patch_px, lv.width_px - o.x);
      const int inside_h = std::min(spec.patch_px, lv.height_px - o.y);
      for (int y = 0; y < spec.patch_px; ++y) {
        for (int x = (y < inside_h ? inside_w : 0); x < spec.patch_px; ++x) pixels.set(x, y, spec.pad_color);
      }
    }
    rec.pixels = std::move(pixels);
    slots[i] = std::move(rec);
  });

  std::vector<PatchRecord> out;
  for (auto& s : slots) {
    if (s) out.push_back(std::move(*s));
  }
  return out;
}

int select_level_with_fallback(int requested_level, std::size_t tissue_pixels_at_level) {
  if (requested_level <= 0) return 0;
  return tissue_pixels_at_level >= kMinLevelTissuePixels ? requested_level : 0;
}

int select_level_with_fallback(const TiledPyramid& p, int requested_level, const BinaryMask& mask) {
  const PyramidLevel& lv = p.level(requested_level);
  if (requested_level == 0) return 0;
  return select_level_with_fallback(requested_level,
                                    rescale_mask(mask, lv.width_px, lv.height_px).tissue_count());
}

int level_for_magnification(const TiledPyramid& p, double magnification) {
  if (!(magnification > 0)) fail(ErrorCode::kInvalidArgument, "magnification must be positive");
  if (p.level_count() < 1) fail(ErrorCode::kInvalidLevel, "pyramid has no levels");
  int best = 0;
  double best_dev = std::numeric_limits<double>::infinity();
  for (const PyramidLevel& lv : p.levels()) {
    const double dev = std::abs(lv.magnification - magnification) / magnification;
    if (dev < best_dev) {
      best_dev = dev;
      best = lv.index;
    }
  }
  if (best_dev > 0.25) {
    fail(ErrorCode::kMagnificationUnavailable,
         "no level within 25% of magnification " + std::to_string(magnification));
  }
  return best;
}

std::vector<PatchRecord> build_balanced_set(const std::map<double, std::vector<PatchRecord>>& sets,
                                            std::size_t n_per_magnification, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<PatchRecord> out;
  out.reserve(sets.size() * n_per_magnification);
  for (const auto& [magnification, list] : sets) {
    if (list.size() < n_per_magnification) {
      fail(ErrorCode::kInsufficientPatches, "magnification " + std::to_string(magnification) + " has " +
                                                std::to_string(list.size()) + " patches, need " +
                                                std::to_string(n_per_magnification));
    }
    // Partial Fisher-Yates: the first n entries become the sample.
    std::vector<std::size_t> idx(list.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    for (std::size_t i = 0; i < n_per_magnification; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(uniform_below(rng, idx.size() - i));
      std::swap(idx[i], idx[j]);
    }
    idx.resize(n_per_magnification);
    std::sort(idx.begin(), idx.end());
    for (std::size_t i : idx) out.push_back(list[i]);
  }
  return out;
}

RgbImage stitch(const std::vector<PatchRecord>& patches, int level_w, int level_h, const PatchSpec& spec) {
  const std::vector<PatchOrigin> plan = plan_patches(level_w, level_h, spec);
  std::map<PatchOrigin, const PatchRecord*> by_origin;
  for (const PatchRecord& rec : patches) {
    if (rec.pixels.width() != spec.patch_px || rec.pixels.height() != spec.patch_px) {
      fail(ErrorCode::kDimensionMismatch, "patch at (" + std::to_string(rec.origin_x) + ", " +
                                              std::to_string(rec.origin_y) + ") is not " +
                                              std::to_string(spec.patch_px) + " px square");
    }
    by_origin.emplace(PatchOrigin{rec.origin_x, rec.origin_y}, &rec);
  }
  const std::size_t n_px = static_cast<std::size_t>(level_w) * static_cast<std::size_t>(level_h);
  std::vector<std::uint32_t> sum(n_px * 3, 0);
  std::vector<std::uint32_t> count(n_px, 0);
  for (const PatchOrigin& o : plan) {
    const auto it = by_origin.find(o);
    if (it == by_origin.end()) {
      fail(ErrorCode::kMissingPatch,
           "no patch at origin (" + std::to_string(o.x) + ", " + std::to_string(o.y) + ")");
    }
    const RgbImage& px = it->second->pixels;
    const int h = std::min(spec.patch_px, level_h - o.y);
    const int w = std::min(spec.patch_px, level_w - o.x);
    for (int y = 0; y < h; ++y) {
      const std::uint8_t* src = px.row(y);
      const std::size_t base = static_cast<std::size_t>(o.y + y) * static_cast<std::size_t>(level_w) +
                               static_cast<std::size_t>(o.x);
      for (int x = 0; x < w; ++x) {
        const std::size_t k = base + static_cast<std::size_t>(x);
        sum[3 * k] += src[3 * x];
        sum[3 * k + 1] += src[3 * x + 1];
        sum[3 * k + 2] += src[3 * x + 2];
        ++count[k];
      }
    }
  }
  RgbImage out(level_w, level_h);
  auto dst = out.bytes();
  for (std::size_t k = 0; k < n_px; ++k) {
    const std::uint32_t c = count[k];
    for (std::size_t ch = 0; ch < 3; ++ch) {
      dst[3 * k + ch] = static_cast<std::uint8_t>((sum[3 * k + ch] + c / 2) / c);
    }
  }
  return out;
}

}  // namespace slimslide
