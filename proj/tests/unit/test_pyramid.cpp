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

#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "slimslide/error.hpp"
#include "slimslide/io.hpp"
#include "slimslide/pyramid.hpp"

namespace slimslide {
namespace {

using testing::TempDir;

constexpr std::uint16_t kTagImageDescription = 270;
constexpr std::uint16_t kTagCompression = 259;
constexpr std::uint16_t kTagTileWidth = 322;
constexpr std::uint16_t kTagTileOffsets = 324;
constexpr std::uint16_t kTagTileByteCounts = 325;

ErrorCode code_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no Error thrown";
  return ErrorCode::kInvalidArgument;
}

RgbImage checkerboard(int w, int h, int cell) {
  RgbImage img(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const bool dark = ((x / cell) + (y / cell)) % 2 == 1;
      img.set(x, y, dark ? Rgb{20, 30, 40} : Rgb{220, 210, 200});
    }
  }
  return img;
}

RgbImage gradient(int w, int h) {
  RgbImage img(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      img.set(x, y, {static_cast<std::uint8_t>(x), static_cast<std::uint8_t>(y), static_cast<std::uint8_t>(x ^ y)});
    }
  }
  return img;
}

/// Random pyramid geometry, contents and sparsity; lossless tiles so pixels
/// can be compared exactly.
TiledPyramid random_pyramid(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const int tile = 16 * static_cast<int>(1 + rng() % 4);
  const int w = 40 + static_cast<int>(rng() % 300);
  const int h = 40 + static_cast<int>(rng() % 300);
  const int n_levels = 1 + static_cast<int>(rng() % 3);
  const Rgb bg{static_cast<std::uint8_t>(rng()), static_cast<std::uint8_t>(rng()), static_cast<std::uint8_t>(rng())};
  auto levels = make_halving_levels(w, h, n_levels, tile, tile, 20.0);
  TiledPyramid p(20.0, levels, CodecSpec::png(), bg);
  for (const PyramidLevel& lv : p.levels()) {
    for (int r = 0; r < lv.tiles_down(); ++r) {
      for (int c = 0; c < lv.tiles_across(); ++c) {
        if (rng() % 3 == 0) continue;  // stays Empty
        p.set_tile({lv.index, c, r}, encode_tile(testing::random_image(tile, tile, rng()), CodecSpec::png()));
      }
    }
  }
  return p;
}

void expect_same_structure(const TiledPyramid& a, const TiledPyramid& b) {
  ASSERT_EQ(a.level_count(), b.level_count());
  EXPECT_DOUBLE_EQ(a.base_magnification(), b.base_magnification());
  EXPECT_EQ(a.background_color(), b.background_color());
  for (int k = 0; k < a.level_count(); ++k) {
    const PyramidLevel& la = a.level(k);
    const PyramidLevel& lb = b.level(k);
    EXPECT_EQ(la.width_px, lb.width_px);
    EXPECT_EQ(la.height_px, lb.height_px);
    EXPECT_EQ(la.tile_w, lb.tile_w);
    EXPECT_EQ(la.tile_h, lb.tile_h);
    EXPECT_NEAR(la.magnification, lb.magnification, 1e-9);
    for (int r = 0; r < la.tiles_down(); ++r) {
      for (int c = 0; c < la.tiles_across(); ++c) {
        EXPECT_EQ(a.tile({k, c, r}).is_empty(), b.tile({k, c, r}).is_empty()) << k << "," << c << "," << r;
      }
    }
  }
}

TEST(HalvingLevels, CeilHalvesAndMagnification) {
  const auto levels = make_halving_levels(1001, 500, 3, 256, 256, 40.0);
  ASSERT_EQ(levels.size(), 3u);
  EXPECT_EQ(levels[1].width_px, 501);
  EXPECT_EQ(levels[1].height_px, 250);
  EXPECT_EQ(levels[2].width_px, 251);
  // Downsample is the level-0 width over the level width.
  EXPECT_DOUBLE_EQ(levels[2].downsample, 1001.0 / 251.0);
  EXPECT_DOUBLE_EQ(levels[2].magnification, 40.0 * 251.0 / 1001.0);
  EXPECT_EQ(levels[0].tiles_across(), 4);
  EXPECT_EQ(levels[0].tile_count(), 8u);
}

TEST(TiledPyramid, TilesStartEmpty) {
  TiledPyramid p(40.0, make_halving_levels(512, 512, 2, 256, 256, 40.0), CodecSpec::jpeg(90));
  EXPECT_EQ(p.total_tile_count(), 5u);
  EXPECT_EQ(p.empty_tile_count(), 5u);
  EXPECT_FALSE(p.contains({0, 2, 0}));
  EXPECT_FALSE(p.contains({2, 0, 0}));
  EXPECT_ANY_THROW((void)p.tile({0, 2, 0}));
}

TEST(ReadTile, EmptyTileIsBackground) {
  TiledPyramid p(40.0, make_halving_levels(512, 512, 1, 256, 256, 40.0), CodecSpec::jpeg(90));
  const RgbImage t = read_tile(p, {0, 1, 1});
  ASSERT_EQ(t.width(), 256);
  ASSERT_EQ(t.height(), 256);
  EXPECT_EQ(t, RgbImage(256, 256, kWhite));
}

TEST(ReadTile, LosslessGradientIsExact) {
  const RgbImage g = gradient(256, 256);
  TiledPyramid p(40.0, make_halving_levels(256, 256, 1, 256, 256, 40.0), CodecSpec::png());
  p.set_tile({0, 0, 0}, encode_tile(g, CodecSpec::png()));
  EXPECT_EQ(read_tile(p, {0, 0, 0}), g);
}

TEST(ReadTile, JpegMidGrayWithinTwo) {
  const RgbImage gray(256, 256, {128, 128, 128});
  TiledPyramid p(40.0, make_halving_levels(256, 256, 1, 256, 256, 40.0), CodecSpec::jpeg(90));
  p.set_tile({0, 0, 0}, encode_tile(gray, CodecSpec::jpeg(90)));
  const RgbImage back = read_tile(p, {0, 0, 0});
  int worst = 0;
  for (std::size_t i = 0; i < back.bytes().size(); ++i) worst = std::max(worst, std::abs(back.bytes()[i] - 128));
  EXPECT_LE(worst, 2);
}

TEST(ReadRegion, OneTileEqualsReadTile) {
  const auto p = testing::pyramid_from_image(checkerboard(512, 512, 32), 1, 256, CodecSpec::png());
  EXPECT_EQ(read_region(p, 0, 256, 0, 256, 256), read_tile(p, {0, 1, 0}));
}

TEST(ReadRegion, TwoByTwoCheckerboardReassembles) {
  const RgbImage board = checkerboard(512, 512, 24);
  const auto p = testing::pyramid_from_image(board, 1, 256, CodecSpec::png());
  EXPECT_EQ(read_region(p, 0, 100, 140, 300, 260), board.crop(100, 140, 300, 260));
}

TEST(ReadRegion, OverhangIsBackground) {
  const auto p = testing::pyramid_from_image(RgbImage(300, 300, {0, 0, 0}), 1, 256, CodecSpec::png());
  const RgbImage r = read_region(p, 0, 280, 0, 64, 8);
  for (int y = 0; y < 8; ++y) {
    for (int x = 0; x < 64; ++x) EXPECT_EQ(r.at(x, y), (x < 20 ? Rgb{0, 0, 0} : kWhite)) << x;
  }
}

TEST(WritePyramid, RoundTripTwoLevelsLossless) {
  TempDir dir;
  const RgbImage img = testing::natural_image(600, 400, 1);
  const auto p = testing::pyramid_from_image(img, 2, 256, CodecSpec::png(), 20.0);
  write_pyramid(p, dir / "a.tiff");
  const TiledPyramid q = open_pyramid(dir / "a.tiff");
  expect_same_structure(p, q);
  EXPECT_EQ(q.tile_codec().family, CodecFamily::kPng);
  for (int k = 0; k < 2; ++k) {
    for (int r = 0; r < p.level(k).tiles_down(); ++r) {
      for (int c = 0; c < p.level(k).tiles_across(); ++c) EXPECT_EQ(read_tile(p, {k, c, r}), read_tile(q, {k, c, r}));
    }
  }
}

TEST(WritePyramid, RandomSparsePyramidsRoundTrip) {
  TempDir dir;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const TiledPyramid p = random_pyramid(seed);
    const auto path = dir / ("p" + std::to_string(seed) + ".tiff");
    const std::uint64_t bytes = write_pyramid(p, path);
    EXPECT_EQ(bytes, file_size_bytes(path));
    const TiledPyramid q = open_pyramid(path);
    expect_same_structure(p, q);
    for (const PyramidLevel& lv : p.levels()) {
      for (int r = 0; r < lv.tiles_down(); ++r) {
        for (int c = 0; c < lv.tiles_across(); ++c) {
          EXPECT_EQ(read_tile(p, {lv.index, c, r}), read_tile(q, {lv.index, c, r}));
        }
      }
    }
  }
}

TEST(WritePyramid, EmptyTilesHaveZeroByteCountAndOffset) {
  TempDir dir;
  TiledPyramid p(40.0, make_halving_levels(512, 512, 1, 256, 256, 40.0), CodecSpec::jpeg(90));
  p.set_tile({0, 0, 0}, encode_tile(RgbImage(256, 256, {1, 2, 3}), CodecSpec::jpeg(90)));
  p.set_tile({0, 1, 1}, encode_tile(RgbImage(256, 256, {4, 5, 6}), CodecSpec::jpeg(90)));
  write_pyramid(p, dir / "s.tiff");
  const auto dirs = testing::probe_tiff(dir / "s.tiff");
  ASSERT_EQ(dirs.size(), 1u);
  const auto& counts = dirs[0].at(kTagTileByteCounts);
  const auto& offsets = dirs[0].at(kTagTileOffsets);
  ASSERT_EQ(counts.size(), 4u);
  EXPECT_EQ(std::count(counts.begin(), counts.end(), 0u), 2);
  EXPECT_EQ(counts[1], 0u);
  EXPECT_EQ(counts[2], 0u);
  EXPECT_EQ(offsets[1], 0u);
  EXPECT_GT(counts[0], 0u);
  EXPECT_EQ(dirs[0].at(kTagCompression).at(0), 7u);
  EXPECT_EQ(dirs[0].at(kTagTileWidth).at(0), 256u);
  // JPEG tiles are declared YCbCr with their chroma subsampling.
  EXPECT_EQ(dirs[0].at(262).at(0), 6u);
  EXPECT_EQ(dirs[0].at(530), (std::vector<std::uint64_t>{2, 2}));
}

TEST(WritePyramid, ZeroByteTileOpensAsEmpty) {
  TempDir dir;
  auto p = testing::pyramid_from_image(testing::natural_image(512, 512, 2), 2, 256, CodecSpec::jpeg(90));
  p.set_tile({0, 1, 1}, TileStatus::empty());
  write_pyramid(p, dir / "z.tiff");
  const TiledPyramid q = open_pyramid(dir / "z.tiff");
  EXPECT_TRUE(q.tile({0, 1, 1}).is_empty());
  EXPECT_TRUE(q.tile({0, 0, 1}).is_present());
  EXPECT_EQ(read_tile(q, {0, 1, 1}), RgbImage(256, 256, kWhite));
}

TEST(WritePyramid, BackgroundAndMagnificationInDescription) {
  TempDir dir;
  TiledPyramid p(20.0, make_halving_levels(256, 256, 1, 256, 256, 20.0), CodecSpec::png(), {250, 240, 230});
  write_pyramid(p, dir / "d.tiff");
  const std::string desc = testing::probe_tiff_ascii(dir / "d.tiff", 0, kTagImageDescription);
  EXPECT_NE(desc.find("background=FAF0E6"), std::string::npos) << desc;
  EXPECT_NE(desc.find("magnification=20"), std::string::npos) << desc;
  const TiledPyramid q = open_pyramid(dir / "d.tiff");
  EXPECT_EQ(q.background_color(), (Rgb{250, 240, 230}));
  EXPECT_EQ(read_tile(q, {0, 0, 0}), RgbImage(256, 256, {250, 240, 230}));
}

TEST(WritePyramid, AllEmptySmallerThanAllWhiteJpeg) {
  TempDir dir;
  const auto levels = make_halving_levels(1024, 1024, 3, 256, 256, 40.0);
  TiledPyramid empty(40.0, levels, CodecSpec::jpeg(90));
  TiledPyramid white(40.0, levels, CodecSpec::jpeg(90));
  const TileStatus white_tile = encode_tile(RgbImage(256, 256, kWhite), CodecSpec::jpeg(90));
  for (const PyramidLevel& lv : white.levels()) {
    for (int r = 0; r < lv.tiles_down(); ++r) {
      for (int c = 0; c < lv.tiles_across(); ++c) white.set_tile({lv.index, c, r}, white_tile);
    }
  }
  EXPECT_LT(write_pyramid(empty, dir / "e.tiff"), write_pyramid(white, dir / "w.tiff"));
}

TEST(WritePyramid, EmptyingTilesNeverGrowsFile) {
  TempDir dir;
  auto p = testing::pyramid_from_image(testing::natural_image(768, 512, 3), 2, 256, CodecSpec::jpeg(90));
  std::uint64_t prev = write_pyramid(p, dir / "0.tiff");
  int step = 0;
  for (int r = 0; r < p.level(0).tiles_down(); ++r) {
    for (int c = 0; c < p.level(0).tiles_across(); ++c) {
      p.set_tile({0, c, r}, TileStatus::empty());
      const std::uint64_t now = write_pyramid(p, dir / (std::to_string(++step) + ".tiff"));
      EXPECT_LE(now, prev);
      prev = now;
    }
  }
}

TEST(WritePyramid, ReencodesWhenCodecDiffers) {
  TempDir dir;
  const auto p = testing::pyramid_from_image(testing::natural_image(256, 256, 4), 1, 256, CodecSpec::png());
  write_pyramid(p, dir / "j.tiff", CodecSpec::jpeg(80));
  const TiledPyramid q = open_pyramid(dir / "j.tiff");
  EXPECT_EQ(q.tile_codec().family, CodecFamily::kJpeg);
  EXPECT_EQ(testing::probe_tiff(dir / "j.tiff")[0].at(kTagCompression).at(0), 7u);
}

TEST(PyramidWriter, UnsubmittedTilesAreEmpty) {
  TempDir dir;
  PyramidWriter w(40.0, make_halving_levels(512, 256, 1, 256, 256, 40.0), CodecSpec::png());
  w.submit({0, 1, 0}, encode_tile(RgbImage(256, 256, {9, 9, 9}), CodecSpec::png()));
  const std::uint64_t bytes = w.finalize(dir / "w.tiff");
  EXPECT_EQ(bytes, file_size_bytes(dir / "w.tiff"));
  const TiledPyramid q = open_pyramid(dir / "w.tiff");
  EXPECT_TRUE(q.tile({0, 0, 0}).is_empty());
  EXPECT_EQ(read_tile(q, {0, 1, 0}), RgbImage(256, 256, {9, 9, 9}));
}

/// Minimal uncompressed strip TIFF: 2x2 RGB, one strip.
Bytes strip_tiff() {
  Bytes b;
  const auto u16 = [&](std::uint32_t v) {
    b.push_back(static_cast<std::uint8_t>(v));
    b.push_back(static_cast<std::uint8_t>(v >> 8));
  };
  const auto u32 = [&](std::uint32_t v) {
    u16(v & 0xFFFF);
    u16(v >> 16);
  };
  b = {'I', 'I'};
  u16(42);
  u32(8);
  const std::vector<std::array<std::uint32_t, 3>> entries = {
      {256, 3, 2}, {257, 3, 2}, {258, 3, 8}, {259, 3, 1}, {262, 3, 2},
      {273, 4, 0}, {277, 3, 3}, {278, 3, 2}, {279, 4, 12}};
  const std::uint32_t data_at = 8 + 2 + static_cast<std::uint32_t>(entries.size()) * 12 + 4;
  u16(static_cast<std::uint32_t>(entries.size()));
  for (const auto& [tag, type, value] : entries) {
    u16(tag);
    u16(type);
    u32(1);
    const std::uint32_t v = tag == 273 ? data_at : value;
    if (type == 3) {
      u16(v);
      u16(0);
    } else {
      u32(v);
    }
  }
  u32(0);
  for (int i = 0; i < 12; ++i) b.push_back(static_cast<std::uint8_t>(i * 20));
  return b;
}

TEST(OpenPyramid, StripTiffIsNotTiled) {
  TempDir dir;
  write_file_bytes(dir / "strip.tiff", strip_tiff());
  EXPECT_EQ(code_of([&] { (void)open_pyramid(dir / "strip.tiff"); }), ErrorCode::kNotTiled);
}

TEST(OpenPyramid, GarbageIsCorruptDirectory) {
  TempDir dir;
  write_file_bytes(dir / "junk.tiff", Bytes{'I', 'I', 42, 0, 0xFF, 0xFF, 0xFF, 0x00, 1, 2});
  EXPECT_EQ(code_of([&] { (void)open_pyramid(dir / "junk.tiff"); }), ErrorCode::kCorruptDirectory);
}

TEST(OpenPyramid, MissingFileIsIoFailure) {
  TempDir dir;
  EXPECT_EQ(code_of([&] { (void)open_pyramid(dir / "none.tiff"); }), ErrorCode::kIoFailure);
}

TEST(WritePyramid, MockCodecIsRejected) {
  TempDir dir;
  const auto p = testing::pyramid_from_image(RgbImage(256, 256), 1, 256, CodecSpec::png());
  EXPECT_EQ(code_of([&] { write_pyramid(p, dir / "m.tiff", CodecSpec::mock_learned(5)); }),
            ErrorCode::kUnsupportedCodec);
}

}  // namespace
}  // namespace slimslide
