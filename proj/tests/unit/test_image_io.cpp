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

#include <atomic>
#include <cstdlib>
#include <vector>

#include "oracles.hpp"
#include "slimslide/error.hpp"
#include "slimslide/image.hpp"
#include "slimslide/io.hpp"
#include "slimslide/parallel.hpp"
#include "slimslide/png_io.hpp"

namespace slimslide {
namespace {

using testing::TempDir;

TEST(Rgb, HexRoundTrip) {
  EXPECT_EQ(to_hex({255, 0, 16}), "FF0010");
  EXPECT_EQ(rgb_from_hex("ff0010"), (Rgb{255, 0, 16}));
  EXPECT_EQ(rgb_from_hex(to_hex({1, 2, 3})), (Rgb{1, 2, 3}));
}

TEST(Rgb, RejectsMalformedHex) {
  for (const char* bad : {"", "FFF", "GG0000", "FF00001", "#FF0000"}) {
    try {
      (void)rgb_from_hex(bad);
      FAIL() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kInvalidArgument) << bad;
    }
  }
}

TEST(RgbImage, CropPadsOutsidePixels) {
  RgbImage img(4, 3, {10, 20, 30});
  const RgbImage c = img.crop(2, 1, 4, 4, {1, 2, 3});
  ASSERT_EQ(c.width(), 4);
  ASSERT_EQ(c.height(), 4);
  EXPECT_EQ(c.at(0, 0), (Rgb{10, 20, 30}));
  EXPECT_EQ(c.at(1, 1), (Rgb{10, 20, 30}));
  EXPECT_EQ(c.at(2, 0), (Rgb{1, 2, 3}));
  EXPECT_EQ(c.at(0, 2), (Rgb{1, 2, 3}));
}

TEST(RgbImage, BlitClipsToBounds) {
  RgbImage dst(4, 4, {0, 0, 0});
  const RgbImage src(3, 3, {9, 9, 9});
  dst.blit(src, 2, -1);
  EXPECT_EQ(dst.at(2, 0), (Rgb{9, 9, 9}));
  EXPECT_EQ(dst.at(3, 1), (Rgb{9, 9, 9}));
  EXPECT_EQ(dst.at(3, 2), (Rgb{0, 0, 0}));
  EXPECT_EQ(dst.at(1, 0), (Rgb{0, 0, 0}));
}

TEST(RgbImage, DownsampleAveragesTwoByTwoBlocks) {
  RgbImage img(3, 2);
  img.set(0, 0, {0, 0, 0});
  img.set(1, 0, {10, 20, 30});
  img.set(0, 1, {20, 40, 60});
  img.set(1, 1, {30, 60, 90});
  img.set(2, 0, {100, 100, 100});
  img.set(2, 1, {200, 200, 200});
  const RgbImage d = downsample_box2(img);
  ASSERT_EQ(d.width(), 2);
  ASSERT_EQ(d.height(), 1);
  EXPECT_EQ(d.at(0, 0), (Rgb{15, 30, 45}));
  EXPECT_EQ(d.at(1, 0), (Rgb{150, 150, 150}));
}

TEST(PngIo, RgbRoundTripIsExact) {
  const RgbImage img = testing::random_image(37, 23, 5);
  EXPECT_EQ(png::decode_rgb(png::encode_rgb(img)), img);
}

TEST(PngIo, FewColourImagesRoundTripThroughPalette) {
  // Colour counts at and around every palette bit-depth boundary.
  for (int colours : {1, 2, 3, 5, 16, 17, 256, 257}) {
    RgbImage img(37, 23);
    for (int y = 0; y < 23; ++y) {
      for (int x = 0; x < 37; ++x) {
        const int k = (x * 7 + y * 13) % colours;
        img.set(x, y, Rgb{static_cast<std::uint8_t>(k), static_cast<std::uint8_t>(k / 256), 9});
      }
    }
    EXPECT_EQ(png::decode_rgb(png::encode_rgb(img)), img) << colours;
  }
  EXPECT_LT(png::encode_rgb(RgbImage(512, 512, kWhite)).size(), 1024u);
}

TEST(PngIo, GrayKeepsDepthAndText) {
  png::GrayImage g;
  g.width = 5;
  g.height = 2;
  g.bit_depth = 16;
  g.samples = {0, 1, 65535, 32768, 7, 8, 9, 10, 11, 12};
  g.text = {{"scale", "3"}};
  const png::GrayImage back = png::decode_gray(png::encode_gray(g));
  EXPECT_EQ(back.bit_depth, 16);
  EXPECT_EQ(back.samples, g.samples);
  EXPECT_EQ(back.find_text("scale"), "3");
  EXPECT_FALSE(back.find_text("offset").has_value());
}

TEST(PngIo, GarbageIsDecodeFailure) {
  const Bytes junk{1, 2, 3, 4, 5};
  try {
    (void)png::decode_rgb(junk);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDecodeFailure);
  }
}

TEST(FileIo, RoundTripAndSize) {
  TempDir dir;
  const Bytes data{1, 2, 3, 0, 255};
  write_file_bytes(dir / "a.bin", data);
  EXPECT_EQ(read_file_bytes(dir / "a.bin"), data);
  EXPECT_EQ(file_size_bytes(dir / "a.bin"), 5u);
}

TEST(FileIo, MissingFileIsIoFailure) {
  TempDir dir;
  try {
    (void)read_file_bytes(dir / "missing.bin");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIoFailure);
  }
}

TEST(Parallel, VisitsEveryIndexOnce) {
  std::vector<std::atomic<int>> hits(1000);
  parallel_for(hits.size(), 8, [&](std::size_t i) { hits[i].fetch_add(1); });
  for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
}

TEST(Parallel, RethrowsWorkerException) {
  EXPECT_THROW(parallel_for(100, 4,
                            [](std::size_t i) {
                              if (i == 57) fail(ErrorCode::kEncodeFailure, "boom");
                            }),
               Error);
}

TEST(Parallel, EnvironmentSetsDefaultThreads) {
  ::setenv(kThreadsEnvVar, "3", 1);
  EXPECT_EQ(default_thread_count(), 3u);
  ::setenv(kThreadsEnvVar, "zero", 1);
  EXPECT_GE(default_thread_count(), 1u);
  ::unsetenv(kThreadsEnvVar);
}

}  // namespace
}  // namespace slimslide
