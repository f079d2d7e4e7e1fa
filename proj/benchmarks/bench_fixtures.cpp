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

#include "bench_fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace slimslide::bench {

RgbImage texture(int width, int height, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> jitter(-12, 12);
  RgbImage img(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const double wave = std::sin(x * 0.03) * std::cos(y * 0.02);
      const int base = wave > 0.2 ? 150 : 238;
      auto ch = [&](int v) { return static_cast<std::uint8_t>(std::clamp(v + jitter(rng), 0, 255)); };
      img.set(x, y, Rgb{ch(base + 60 * (base < 200)), ch(base - 40 * (base < 200)), ch(base + 20 * (base < 200))});
    }
  }
  return img;
}

BinaryMask texture_mask(int width, int height, std::uint64_t seed) {
  return threshold_segment(texture(width, height, seed), SegmentationConfig{});
}

}  // namespace slimslide::bench
