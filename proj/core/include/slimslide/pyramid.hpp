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

#include <compare>
#include <cstdint>
#include <filesystem>
#include <mutex>
#include <vector>

#include "slimslide/codecs.hpp"
#include "slimslide/image.hpp"
#include "slimslide/io.hpp"

namespace slimslide {

/// Geometry of one pyramid level. Level 0 is full resolution.
struct PyramidLevel {
  int index = 0;
  int width_px = 0;
  int height_px = 0;
  int tile_w = 256;
  int tile_h = 256;
  double downsample = 1.0;      // relative to level 0
  double magnification = 40.0;  // base magnification / downsample

  [[nodiscard]] int tiles_across() const noexcept { return (width_px + tile_w - 1) / tile_w; }
  [[nodiscard]] int tiles_down() const noexcept { return (height_px + tile_h - 1) / tile_h; }
  [[nodiscard]] std::size_t tile_count() const noexcept {
    return static_cast<std::size_t>(tiles_across()) * static_cast<std::size_t>(tiles_down());
  }
};

/// Builds `n_levels` levels by repeated halving (ceil) of the level-0 size.
std::vector<PyramidLevel> make_halving_levels(int width, int height, int n_levels, int tile_w, int tile_h,
                                              double base_magnification);

struct TileRef {
  int level = 0;
  int col = 0;
  int row = 0;

  friend auto operator<=>(const TileRef&, const TileRef&) = default;
};

/// Either an encoded tile payload or an empty (zero-byte) tile that renders
/// as the pyramid background colour.
class TileStatus {
 public:
  TileStatus() = default;  // Empty
  static TileStatus empty() { return {}; }
  static TileStatus present(Bytes encoded);

  [[nodiscard]] bool is_empty() const noexcept { return bytes_.empty(); }
  [[nodiscard]] bool is_present() const noexcept { return !bytes_.empty(); }
  [[nodiscard]] const Bytes& bytes() const noexcept { return bytes_; }

  friend bool operator==(const TileStatus&, const TileStatus&) = default;

 private:
  Bytes bytes_;
};

class TiledPyramid {
 public:
  TiledPyramid() = default;
  /// Every tile starts out Empty. Levels must have strictly increasing
  /// downsample and are re-indexed 0..n-1.
  TiledPyramid(double base_magnification, std::vector<PyramidLevel> levels, CodecSpec tile_codec,
               Rgb background = kWhite);

  [[nodiscard]] double base_magnification() const noexcept { return base_magnification_; }
  [[nodiscard]] const std::vector<PyramidLevel>& levels() const noexcept { return levels_; }
  [[nodiscard]] int level_count() const noexcept { return static_cast<int>(levels_.size()); }
  [[nodiscard]] const PyramidLevel& level(int index) const;
  [[nodiscard]] const CodecSpec& tile_codec() const noexcept { return tile_codec_; }
  [[nodiscard]] Rgb background_color() const noexcept { return background_; }

  [[nodiscard]] bool contains(const TileRef& t) const noexcept;
  [[nodiscard]] const TileStatus& tile(const TileRef& t) const;
  void set_tile(const TileRef& t, TileStatus status);

  [[nodiscard]] std::size_t empty_tile_count() const noexcept;
  [[nodiscard]] std::size_t total_tile_count() const noexcept;

 private:
  [[nodiscard]] std::size_t slot(const TileRef& t) const;

  double base_magnification_ = 40.0;
  std::vector<PyramidLevel> levels_;
  CodecSpec tile_codec_;
  Rgb background_ = kWhite;
  std::vector<std::vector<TileStatus>> tiles_;
};

/// Encodes a full-size tile for storage inside a TIFF. Lossless (PNG family)
/// tiles are stored as Deflate streams of raw RGB, JPEG tiles as complete
/// JFIF streams.
TileStatus encode_tile(const RgbImage& pixels, const CodecSpec& codec);
RgbImage decode_tile(std::span<const std::uint8_t> bytes, const CodecSpec& codec, int tile_w, int tile_h);

/// Decoded tile; Empty tiles come back filled with the background colour.
RgbImage read_tile(const TiledPyramid& p, const TileRef& t);
/// Stitched region of a level; pixels outside the level are background.
RgbImage read_region(const TiledPyramid& p, int level, int x, int y, int w, int h);

TiledPyramid open_pyramid(const std::filesystem::path& path);

/// Two-phase TIFF writer: tiles may be submitted from any thread in any
/// order, then finalize() writes the file in one serialized step.
class PyramidWriter {
 public:
  PyramidWriter(double base_magnification, std::vector<PyramidLevel> levels, CodecSpec codec,
                Rgb background = kWhite);

  void submit(const TileRef& t, TileStatus status);
  /// Returns the true file size in bytes. Tiles never submitted are written
  /// as empty tiles.
  std::uint64_t finalize(const std::filesystem::path& path);

 private:
  std::mutex mutex_;
  TiledPyramid staged_;
};

/// Writes `p` as a tiled TIFF with `codec`, re-encoding Present tiles only
/// when `codec` differs from p.tile_codec(). Returns the file size in bytes.
std::uint64_t write_pyramid(const TiledPyramid& p, const std::filesystem::path& path, const CodecSpec& codec,
                            unsigned threads = 0);
inline std::uint64_t write_pyramid(const TiledPyramid& p, const std::filesystem::path& path) {
  return write_pyramid(p, path, p.tile_codec());
}

}  // namespace slimslide
