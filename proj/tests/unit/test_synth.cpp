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

#include "oracles.hpp"
#include "slimslide/error.hpp"
#include "slimslide/io.hpp"
#include "slimslide/synth.hpp"

namespace slimslide {
namespace {

using testing::TempDir;

SynthSpec spec_of(double glass, std::uint64_t seed = 0) {
  SynthSpec s;
  s.seed = seed;
  s.width = 1024;
  s.height = 768;
  s.n_levels = 3;
  s.glass_tile_frac = glass;
  return s;
}

TEST(Synth, AllGlassHasNoTissue) {
  SynthSpec s = spec_of(1.0);
  s.blob_count = 0;
  const SynthSlide slide = generate_slide(s);
  EXPECT_DOUBLE_EQ(slide.ground_truth.tissue_fraction(), 0.0);
  EXPECT_DOUBLE_EQ(slide.glass_tile_frac, 1.0);
}

TEST(Synth, NoGlassIsAllTissue) {
  const SynthSlide slide = generate_slide(spec_of(0.0));
  EXPECT_DOUBLE_EQ(slide.ground_truth.tissue_fraction(), 1.0);
  EXPECT_DOUBLE_EQ(slide.glass_tile_frac, 0.0);
}

TEST(Synth, SameSeedIsByteIdentical) {
  TempDir dir;
  const SynthSlide a = generate_slide(spec_of(0.5, 7), 1);
  const SynthSlide b = generate_slide(spec_of(0.5, 7), 8);
  EXPECT_EQ(write_pyramid(a.pyramid, dir / "a.tiff"), write_pyramid(b.pyramid, dir / "b.tiff"));
  EXPECT_EQ(read_file_bytes(dir / "a.tiff"), read_file_bytes(dir / "b.tiff"));
  EXPECT_EQ(a.ground_truth, b.ground_truth);
  const SynthSlide c = generate_slide(spec_of(0.5, 8));
  EXPECT_FALSE(c.ground_truth == a.ground_truth);
}

TEST(Synth, GlassFractionWithinOneTileRow) {
  for (double frac : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    SynthSpec s = spec_of(frac, 3);
    s.width = 2048;
    s.height = 2048;
    s.n_levels = 1;
    const SynthSlide slide = generate_slide(s);
    // One tile row of eight is 0.125.
    EXPECT_NEAR(slide.glass_tile_frac, frac, 0.125 + 1e-12) << frac;
  }
}

TEST(Synth, GroundTruthMatchesRenderedColours) {
  SynthSpec s = spec_of(0.5, 2);
  s.tile_codec = CodecSpec::png();
  s.n_levels = 1;
  const SynthSlide slide = generate_slide(s);
  const RgbImage img = read_region(slide.pyramid, 0, 0, 0, s.width, s.height);
  std::size_t mismatches = 0;
  for (int y = 0; y < s.height; ++y) {
    for (int x = 0; x < s.width; ++x) mismatches += testing::reference_is_tissue(img.at(x, y)) != slide.ground_truth.at(x, y);
  }
  EXPECT_EQ(mismatches, 0u);
}

TEST(Synth, SegmentationDiceOnFixture) {
  const SynthSlide slide = generate_slide(spec_of(0.5, 4));
  const BinaryMask m = segment_level(slide.pyramid, 0, SegmentationConfig{});
  EXPECT_GE(dice(m, slide.ground_truth), 0.99);
}

TEST(Synth, ArtifactLinesOnlyOnGlass) {
  SynthSpec s = spec_of(0.5, 5);
  s.artifact_lines = 6;
  s.tile_codec = CodecSpec::png();
  s.n_levels = 1;
  const SynthSlide slide = generate_slide(s);
  const RgbImage img = read_region(slide.pyramid, 0, 0, 0, s.width, s.height);
  std::size_t dark_glass = 0;
  for (int y = 0; y < s.height; ++y) {
    for (int x = 0; x < s.width; ++x) dark_glass += !slide.ground_truth.at(x, y) && img.at(x, y) == kSynthArtifact;
  }
  EXPECT_GT(dark_glass, 0u);
  EXPECT_GT(threshold_segment(img, SegmentationConfig{}).tissue_count(), slide.ground_truth.tissue_count());
}

TEST(Synth, SpecJsonRoundTripAndValidation) {
  SynthSpec s = spec_of(0.25, 99);
  s.glass_noise_amp = 3;
  s.tile_codec = CodecSpec::jpeg(80);
  const SynthSpec back = SynthSpec::from_json(s.to_json());
  EXPECT_EQ(back.to_json(), s.to_json());
  EXPECT_EQ(SynthSpec::from_json("{\"seed\": 4}").width, 2048);
  for (const char* bad : {"{\"glass_tile_frac\": 1.5}", "{\"glass_noise_amp\": 21}", "{\"tile_px\": 100}",
                          "{\"n_levels\": 0}", "{\"tile_codec\": \"mock:3\"}"}) {
    try {
      SynthSpec::from_json(bad).validate();
      ADD_FAILURE() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kInvalidSpec) << bad;
    }
  }
  EXPECT_THROW((void)SynthSpec::from_json("[1,2]"), Error);
}

}  // namespace
}  // namespace slimslide
