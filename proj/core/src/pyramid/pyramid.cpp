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
#include <string>

#include "codecs/backends.hpp"
#include "slimslide/error.hpp"
#include "slimslide/pyramid.hpp"

namespace slimslide {

std::vector<PyramidLevel> make_halving_levels(int width, int height, int n_levels, int tile_w, int tile_h,
                                              double base_magnification) {
  if (width < 1 || height < 1 || n_levels < 1 || tile_w < 1 || tile_h < 1) {
    fail(ErrorCode::kInvalidDimensions, "pyramid geometry must be positive");
  }
  std::vector<PyramidLevel> levels;
  int w = width;
  int h = height;
  for (int k = 0; k < n_levels; ++k) {
    PyramidLevel level;
    level.index = k;
    level.width_px = w;
    level.height_px = h;
    level.tile_w = tile_w;
    level.tile_h = tile_h;
    level.downsample = static_cast<double>(width) / w;
    level.magnification = base_magnification / level.downsample;
    levels.push_back(level);
    if (w == 1 && h == 1 && k + 1 < n_levels) fail(ErrorCode::kInvalidDimensions, "too many levels for image size");
    w = (w + 1) / 2;
    h = (h + 1) / 2;
  }
  return levels;
}

TileStatus TileStatus::present(Bytes encoded) {
  if (encoded.empty()) fail(ErrorCode::kInvalidArgument, "a present tile needs a non-empty payload");
  TileStatus s;
  s.bytes_ = std::move(encoded);
  return s;
}

TiledPyramid::TiledPyramid(double base_magnification, std::vector<PyramidLevel> levels, CodecSpec tile_codec,
                           Rgb background)
    : base_magnification_(base_magnification),
      levels_(std::move(levels)),
      tile_codec_(tile_codec),
      background_(background) {
  if (!(base_magnification > 0)) fail(ErrorCode::kInvalidArgument, "base magnification must be positive");
  if (levels_.empty()) fail(ErrorCode::kInvalidArgument, "a pyramid needs at least one level");
  for (std::size_t k = 0; k < levels_.size(); ++k) {
    PyramidLevel& level = levels_[k];
    if (level.width_px < 1 || level.height_px < 1 || level.tile_w < 1 || level.tile_h < 1) {
      fail(ErrorCode::kInvalidDimensions, "level " + std::to_string(k) + " has non-positive geometry");
    }
    if (k > 0 && !(level.downsample > levels_[k - 1].downsample)) {
      fail(ErrorCode::kInvalidArgument, "level downsample factors must strictly increase");
    }
    level.index = static_cast<int>(k);
    level.magnification = base_magnification_ / level.downsample;
    tiles_.emplace_back(level.tile_count());
  }
}

const PyramidLevel& TiledPyramid::level(int index) const {
  if (index < 0 || index >= level_count()) {
    fail(ErrorCode::kInvalidLevel, "level " + std::to_string(index) + " does not exist (pyramid has " +
                                       std::to_string(level_count()) + ")");
  }
  return levels_[static_cast<std::size_t>(index)];
}

bool TiledPyramid::contains(const TileRef& t) const noexcept {
  if (t.level < 0 || t.level >= level_count()) return false;
  const PyramidLevel& l = levels_[static_cast<std::size_t>(t.level)];
  return t.col >= 0 && t.row >= 0 && t.col < l.tiles_across() && t.row < l.tiles_down();
}

std::size_t TiledPyramid::slot(const TileRef& t) const {
  if (!contains(t)) {
    fail(ErrorCode::kInvalidArgument, "tile (" + std::to_string(t.level) + "," + std::to_string(t.col) + "," +
                                          std::to_string(t.row) + ") is outside the pyramid");
  }
  const PyramidLevel& l = levels_[static_cast<std::size_t>(t.level)];
  return static_cast<std::size_t>(t.row) * static_cast<std::size_t>(l.tiles_across()) +
         static_cast<std::size_t>(t.col);
}

const TileStatus& TiledPyramid::tile(const TileRef& t) const {
  return tiles_[static_cast<std::size_t>(t.level)][slot(t)];
}

void TiledPyramid::set_tile(const TileRef& t, TileStatus status) {
  const std::size_t s = slot(t);
  tiles_[static_cast<std::size_t>(t.level)][s] = std::move(status);
}

std::size_t TiledPyramid::empty_tile_count() const noexcept {
  std::size_t n = 0;
  for (const auto& level : tiles_) {
    n += static_cast<std::size_t>(std::count_if(level.begin(), level.end(), [](const TileStatus& s) { return s.is_empty(); }));
  }
  return n;
}

std::size_t TiledPyramid::total_tile_count() const noexcept {
  std::size_t n = 0;
  for (const auto& level : tiles_) n += level.size();
  return n;
}

TileStatus encode_tile(const RgbImage& pixels, const CodecSpec& codec) {
  codec.validate();
  switch (codec.family) {
    case CodecFamily::kPng:
      return TileStatus::present(detail::deflate_bytes(pixels.bytes(), 6));
    case CodecFamily::kMockLearned:
      fail(ErrorCode::kUnsupportedCodec, "mock learned codec cannot encode TIFF tiles");
    default:
      return TileStatus::present(encode(pixels, codec).primary);
  }
}

RgbImage decode_tile(std::span<const std::uint8_t> bytes, const CodecSpec& codec, int tile_w, int tile_h) {
  RgbImage img;
  if (codec.family == CodecFamily::kPng) {
    img = RgbImage(tile_w, tile_h);
    const Bytes raw = detail::inflate_bytes(bytes, img.bytes().size());
    std::copy(raw.begin(), raw.end(), img.bytes().begin());
    return img;
  }
  EncodedPatch patch;
  patch.primary.assign(bytes.begin(), bytes.end());
  img = decode(patch, codec);
  if (img.width() != tile_w || img.height() != tile_h) {
    fail(ErrorCode::kDecodeFailure, "tile decoded to " + std::to_string(img.width()) + "x" +
                                        std::to_string(img.height()) + ", expected " + std::to_string(tile_w) +
                                        "x" + std::to_string(tile_h));
  }
  return img;
}

RgbImage read_tile(const TiledPyramid& p, const TileRef& t) {
  const PyramidLevel& level = p.level(t.level);
  const TileStatus& status = p.tile(t);
  if (status.is_empty()) return RgbImage(level.tile_w, level.tile_h, p.background_color());
  try {
    return decode_tile(status.bytes(), p.tile_codec(), level.tile_w, level.tile_h);
  } catch (const Error& e) {
    throw Error(e.code(), "tile (level " + std::to_string(t.level) + ", col " + std::to_string(t.col) + ", row " +
                              std::to_string(t.row) + "): " + e.what());
  }
}

RgbImage read_region(const TiledPyramid& p, int level_index, int x, int y, int w, int h) {
  const PyramidLevel& level = p.level(level_index);
  if (w <= 0 || h <= 0) fail(ErrorCode::kInvalidDimensions, "region size must be positive");
  RgbImage out(w, h, p.background_color());
  const int x0 = std::max(x, 0);
  const int y0 = std::max(y, 0);
  const int x1 = std::min(x + w, level.width_px);
  const int y1 = std::min(y + h, level.height_px);
  if (x0 >= x1 || y0 >= y1) return out;
  for (int row = y0 / level.tile_h; row <= (y1 - 1) / level.tile_h; ++row) {
    for (int col = x0 / level.tile_w; col <= (x1 - 1) / level.tile_w; ++col) {
      const RgbImage tile = read_tile(p, {level_index, col, row});
      const int tx = col * level.tile_w;
      const int ty = row * level.tile_h;
      // Intersection of tile, region, and level extent, in level coordinates.
      const int ix0 = std::max(tx, x0);
      const int iy0 = std::max(ty, y0);
      const int ix1 = std::min(tx + level.tile_w, x1);
      const int iy1 = std::min(ty + level.tile_h, y1);
      out.blit(tile.crop(ix0 - tx, iy0 - ty, ix1 - ix0, iy1 - iy0), ix0 - x, iy0 - y);
    }
  }
  return out;
}

}  // namespace slimslide
