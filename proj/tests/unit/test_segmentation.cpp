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

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "slimslide/error.hpp"
#include "slimslide/io.hpp"
#include "slimslide/png_io.hpp"
#include "slimslide/segmentation.hpp"

namespace slimslide {
namespace {

using testing::TempDir;

ErrorCode code_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no Error thrown";
  return ErrorCode::kInvalidArgument;
}

TEST(ColorDistance, ReferenceValues) {
  EXPECT_DOUBLE_EQ(color_distance({255, 255, 255}), 0.0);
  EXPECT_NEAR(color_distance({0, 0, 0}), std::sqrt(3.0 * 255 * 255), 1e-12);
  EXPECT_NEAR(color_distance({0, 0, 0}), 441.6729559, 1e-6);
  EXPECT_NEAR(color_distance({200, 200, 200}), 95.2627944, 1e-6);
}

TEST(ThresholdSegment, WhiteIsGlassBlackIsTissue) {
  const SegmentationConfig cfg;
  EXPECT_DOUBLE_EQ(threshold_segment(RgbImage(16, 16, kWhite), cfg).tissue_fraction(), 0.0);
  EXPECT_DOUBLE_EQ(threshold_segment(RgbImage(16, 16, {0, 0, 0}), cfg).tissue_fraction(), 1.0);
}

TEST(ThresholdSegment, DistanceExactlyEightyFiveIsGlass) {
  // 255 - 85 = 170 on one channel gives d = 85 exactly.
  RgbImage img(3, 1);
  img.set(0, 0, {170, 255, 255});
  img.set(1, 0, {169, 255, 255});
  img.set(2, 0, {255, 255, 171});
  const BinaryMask m = threshold_segment(img, SegmentationConfig{});
  EXPECT_FALSE(m.at(0, 0));
  EXPECT_TRUE(m.at(1, 0));
  EXPECT_FALSE(m.at(2, 0));
}

TEST(ThresholdSegment, MatchesDirectEvaluationOnRandomImages) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const RgbImage img = testing::random_image(64, 64, seed);
    const BinaryMask m = threshold_segment(img, SegmentationConfig{});
    for (int y = 0; y < 64; ++y) {
      for (int x = 0; x < 64; ++x) ASSERT_EQ(m.at(x, y), testing::reference_is_tissue(img.at(x, y))) << seed;
    }
  }
}

TEST(ThresholdSegment, ShellAroundThresholdMatchesDirectEvaluation) {
  // Every colour whose distance from white lies in [80, 90].
  int checked = 0;
  for (int r = 160; r <= 255; ++r) {
    for (int g = 160; g <= 255; ++g) {
      RgbImage row(96, 1);
      for (int b = 160; b <= 255; ++b) row.set(b - 160, 0, {static_cast<std::uint8_t>(r), static_cast<std::uint8_t>(g), static_cast<std::uint8_t>(b)});
      const BinaryMask m = threshold_segment(row, SegmentationConfig{});
      for (int i = 0; i < 96; ++i) {
        ASSERT_EQ(m.at(i, 0), testing::reference_is_tissue(row.at(i, 0)));
        ++checked;
      }
    }
  }
  EXPECT_EQ(checked, 96 * 96 * 96);
}

TEST(SegmentationConfig, RejectsBadValues) {
  SegmentationConfig cfg;
  cfg.closing_radius = -1;
  EXPECT_EQ(code_of([&] { cfg.validate(); }), ErrorCode::kInvalidArgument);
  cfg = {};
  cfg.threshold = -5;
  EXPECT_EQ(code_of([&] { cfg.validate(); }), ErrorCode::kInvalidArgument);
}

TEST(Morphology, DilateErodeMatchBruteForce) {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const int r = static_cast<int>(seed % 10);
    const BinaryMask m = testing::random_mask(48 + static_cast<int>(seed), 40, 0.1 + 0.07 * static_cast<double>(seed % 8), seed);
    EXPECT_EQ(dilate(m, r), testing::brute_dilate(m, r)) << "seed " << seed;
    EXPECT_EQ(erode(m, r), testing::brute_erode(m, r)) << "seed " << seed;
  }
}

TEST(Morphology, CloseMatchesBruteForce) {
  for (int r = 0; r <= 9; ++r) {
    const BinaryMask m = testing::random_mask(64, 56, 0.35, 100 + static_cast<std::uint64_t>(r));
    EXPECT_EQ(morphological_close(m, r), testing::brute_close(m, r)) << "radius " << r;
  }
}

TEST(Morphology, RadiusZeroIsIdentity) {
  const BinaryMask m = testing::random_mask(30, 20, 0.5, 7);
  EXPECT_EQ(morphological_close(m, 0), m);
  EXPECT_EQ(dilate(m, 0), m);
  EXPECT_EQ(erode(m, 0), m);
}

TEST(Morphology, FullMaskStaysFull) {
  const BinaryMask full(40, 40, 1.0, true);
  for (int r : {1, 5, 9, 30}) EXPECT_EQ(morphological_close(full, r), full) << r;
}

TEST(Morphology, SingleHoleFilled) {
  BinaryMask m(64, 64, 1.0, true);
  m.set(31, 40, false);
  EXPECT_EQ(testing::brute_close(m, 9), BinaryMask(64, 64, 1.0, true));
  EXPECT_EQ(morphological_close(m, 9), BinaryMask(64, 64, 1.0, true));
}

TEST(Morphology, ClosingIsExtensiveAndIdempotent) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const BinaryMask m = testing::random_mask(64, 64, 0.05 + 0.01 * static_cast<double>(seed), seed);
    const BinaryMask c = morphological_close(m, 9);
    for (int y = 0; y < 64; ++y) {
      for (int x = 0; x < 64; ++x) {
        if (m.at(x, y)) {
          ASSERT_TRUE(c.at(x, y)) << seed;
        }
      }
    }
    EXPECT_EQ(morphological_close(c, 9), c) << seed;
  }
}

TEST(Morphology, NegativeRadiusRejected) {
  const BinaryMask m(4, 4, 1.0);
  EXPECT_ANY_THROW((void)morphological_close(m, -1));
}

TEST(BinaryMask, ZeroSizeRejected) {
  EXPECT_EQ(code_of([] { BinaryMask m(0, 0, 1.0); }), ErrorCode::kInvalidDimensions);
  EXPECT_EQ(code_of([] { BinaryMask m(5, 0, 1.0); }), ErrorCode::kInvalidDimensions);
}

TEST(BinaryMask, CountsInRectangleClip) {
  BinaryMask m(10, 10, 1.0);
  for (int y = 0; y < 5; ++y) {
    for (int x = 0; x < 5; ++x) m.set(x, y, true);
  }
  EXPECT_EQ(m.tissue_count(), 25u);
  EXPECT_DOUBLE_EQ(m.tissue_fraction(), 0.25);
  EXPECT_EQ(m.tissue_count_in(3, 3, 100, 100), 4u);
  EXPECT_EQ(m.tissue_count_in(-2, -2, 4, 4), 4u);
}

TEST(MaskFile, RoundTrip) {
  TempDir dir;
  BinaryMask m = testing::random_mask(33, 21, 0.4, 3);
  m.set_magnification(2.5);
  save_mask(m, dir / "m.png");
  const BinaryMask back = load_mask(dir / "m.png");
  EXPECT_EQ(back, m);
  EXPECT_DOUBLE_EQ(back.magnification(), 2.5);
  const png::GrayImage raw = png::decode_gray(read_file_bytes(dir / "m.png"));
  EXPECT_EQ(raw.bit_depth, 8);
  for (std::uint16_t s : raw.samples) EXPECT_TRUE(s == 0 || s == 255);
}

TEST(MaskFile, ExternalMaskAnyNonZeroIsTissue) {
  TempDir dir;
  png::GrayImage g;
  g.width = 3;
  g.height = 1;
  g.samples = {0, 1, 128};
  write_file_bytes(dir / "ext.png", png::encode_gray(g));
  EXPECT_EQ(code_of([&] { (void)load_mask(dir / "ext.png"); }), ErrorCode::kInvalidArgument);
  const BinaryMask m = load_mask(dir / "ext.png", 1.25);
  EXPECT_FALSE(m.at(0, 0));
  EXPECT_TRUE(m.at(1, 0));
  EXPECT_TRUE(m.at(2, 0));
  EXPECT_DOUBLE_EQ(m.magnification(), 1.25);
}

TEST(RescaleMask, IdentityUpAndDown) {
  const BinaryMask m = testing::random_mask(17, 9, 0.5, 1);
  EXPECT_EQ(rescale_mask(m, 17, 9), m);

  BinaryMask two(2, 2, 1.0);
  two.set(0, 0, true);
  const BinaryMask four = rescale_mask(two, 4, 4);
  for (int y = 0; y < 4; ++y) {
    for (int x = 0; x < 4; ++x) EXPECT_EQ(four.at(x, y), x < 2 && y < 2) << x << "," << y;
  }
  EXPECT_DOUBLE_EQ(four.magnification(), 2.0);

  EXPECT_EQ(rescale_mask(BinaryMask(4, 4, 1.0, true), 2, 2), BinaryMask(2, 2, 1.0, true));
}

TEST(Dice, ReferenceValues) {
  const BinaryMask a = testing::random_mask(20, 20, 0.3, 2);
  EXPECT_DOUBLE_EQ(dice(a, a), 1.0);
  BinaryMask left(20, 10, 1.0);
  BinaryMask right(20, 10, 1.0);
  for (int y = 0; y < 10; ++y) {
    for (int x = 0; x < 10; ++x) {
      left.set(x, y, true);
      right.set(x + 10, y, true);
    }
  }
  EXPECT_DOUBLE_EQ(dice(left, right), 0.0);

  // |A| = |B| = 100, overlap 50.
  BinaryMask p(30, 10, 1.0);
  BinaryMask q(30, 10, 1.0);
  for (int y = 0; y < 10; ++y) {
    for (int x = 0; x < 10; ++x) p.set(x, y, true);
    for (int x = 5; x < 15; ++x) q.set(x, y, true);
  }
  EXPECT_DOUBLE_EQ(dice(p, q), 0.5);
  EXPECT_DOUBLE_EQ(dice(BinaryMask(3, 3, 1.0), BinaryMask(3, 3, 1.0)), 1.0);
  EXPECT_EQ(code_of([&] { (void)dice(p, left); }), ErrorCode::kDimensionMismatch);
}

TiledPyramid blob_slide(bool with_line) {
  // Level 1 (lowest) holds a dark 100x100 square at (60, 50).
  RgbImage img(512, 512, kWhite);
  for (int y = 100; y < 300; ++y) {
    for (int x = 120; x < 320; ++x) img.set(x, y, {90, 40, 120});
  }
  if (with_line) {
    for (int y = 0; y < 512; ++y) img.set(440, y, {60, 60, 60});
    for (int y = 0; y < 512; ++y) img.set(441, y, {60, 60, 60});
  }
  return testing::pyramid_from_image(img, 2, 256, CodecSpec::png(), 20.0);
}

TEST(SegmentSlide, BlobMatchesGroundTruth) {
  const BinaryMask m = segment_slide(blob_slide(false), SegmentationConfig{});
  ASSERT_EQ(m.width(), 256);
  EXPECT_DOUBLE_EQ(m.magnification(), 10.0);
  BinaryMask truth(256, 256, 10.0);
  for (int y = 50; y < 150; ++y) {
    for (int x = 60; x < 160; ++x) truth.set(x, y, true);
  }
  EXPECT_GE(dice(m, truth), 0.99);
}

TEST(SegmentSlide, AllGlassGivesZeroFraction) {
  const auto p = testing::pyramid_from_image(RgbImage(512, 512, {240, 240, 238}), 2, 256, CodecSpec::png());
  EXPECT_DOUBLE_EQ(segment_slide(p, SegmentationConfig{}).tissue_fraction(), 0.0);
}

TEST(SegmentSlide, GlassLineArtifactIsSegmentedAsTissue) {
  const BinaryMask m = segment_slide(blob_slide(true), SegmentationConfig{});
  for (int y = 0; y < 256; ++y) EXPECT_TRUE(m.at(220, y)) << y;
}

TEST(SegmentLevel, UsesRequestedLevel) {
  const BinaryMask m = segment_level(blob_slide(false), 0, SegmentationConfig{});
  EXPECT_EQ(m.width(), 512);
  EXPECT_DOUBLE_EQ(m.magnification(), 20.0);
  EXPECT_EQ(m.tissue_count(), 200u * 200u);
}

}  // namespace
}  // namespace slimslide
