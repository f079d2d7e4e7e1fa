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

// Synthetic slide renderer. All randomness comes from a counter-based hash of
// (seed, stream, index), so pixels can be rendered in any order on any
// number of threads and still come out identical.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "json_support.hpp"
#include "slimslide/error.hpp"
#include "slimslide/parallel.hpp"
#include "slimslide/synth.hpp"

namespace slimslide {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint64_t hash3(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  return splitmix64(splitmix64(seed ^ splitmix64(stream)) ^ index);
}

/// Uniform double in [0, 1).
double unit(std::uint64_t h) { return static_cast<double>(h >> 11) * 0x1.0p-53; }

/// Uniform integer in [-amp, amp].
int jitter(std::uint64_t h, int amp) {
  if (amp == 0) return 0;
  return static_cast<int>(h % static_cast<std::uint64_t>(2 * amp + 1)) - amp;
}

std::uint8_t clamp_u8(int v) { return static_cast<std::uint8_t>(std::clamp(v, 0, 255)); }

Rgb textured(Rgb base, std::uint64_t h, int amp) {
  // One shared offset keeps the hue, a small per-channel term adds grain.
  const int shared = jitter(h, amp);
  const int dr = jitter(h >> 16, amp / 4);
  const int dg = jitter(h >> 32, amp / 4);
  const int db = jitter(h >> 48, amp / 4);
  return {clamp_u8(base.r + shared + dr), clamp_u8(base.g + shared + dg), clamp_u8(base.b + shared + db)};
}

enum Stream : std::uint64_t { kGlassNoise = 1, kTissueNoise, kWave, kBlobs, kLines };

struct Ellipse {
  double cx, cy, rx, ry, cos_t, sin_t;
  [[nodiscard]] bool contains(double x, double y) const {
    const double dx = x - cx;
    const double dy = y - cy;
    const double u = (dx * cos_t + dy * sin_t) / rx;
    const double v = (-dx * sin_t + dy * cos_t) / ry;
    return u * u + v * v <= 1.0;
  }
};

struct Line {
  bool vertical;
  int pos;
};

struct Layout {
  int band_rows = 0;  // tile rows reached by tissue
  bool full = false;  // every pixel is tissue
  int edge_top = 0;   // top of the row holding the wavy edge
  double wave_phase = 0.0;
  double wave_period = 1.0;
  std::vector<Ellipse> blobs;
  std::vector<Line> lines;

  /// Exclusive lower bound of tissue in column x.
  [[nodiscard]] int tissue_end(int x, int tile, int height) const {
    if (full) return height;
    if (band_rows == 0) return 0;
    const double t = 0.45 + 0.3 * std::sin(2.0 * std::numbers::pi * x / wave_period + wave_phase);
    const int limit = std::min(edge_top + tile, height);
    return std::clamp(edge_top + static_cast<int>(std::lround(t * tile)), edge_top + 1, limit);
  }
};

Layout make_layout(const SynthSpec& s) {
  Layout l;
  const int tiles_down = (s.height + s.tile_px - 1) / s.tile_px;
  const int glass_rows = static_cast<int>(std::lround(s.glass_tile_frac * tiles_down));
  l.band_rows = tiles_down - glass_rows;
  l.full = glass_rows == 0;
  l.edge_top = std::max(0, l.band_rows - 1) * s.tile_px;
  l.wave_phase = 2.0 * std::numbers::pi * unit(hash3(s.seed, kWave, 0));
  l.wave_period = std::max(64.0, s.width / (2.0 + 2.0 * unit(hash3(s.seed, kWave, 1))));
  if (l.band_rows > 0) {
    const double band_h = l.full ? s.height : l.edge_top + 0.45 * s.tile_px;
    for (int i = 0; i < s.blob_count; ++i) {
      const auto u = [&](std::uint64_t k) { return unit(hash3(s.seed, kBlobs, static_cast<std::uint64_t>(i) * 8 + k)); };
      const double theta = std::numbers::pi * u(4);
      l.blobs.push_back({u(0) * s.width, u(1) * band_h, s.width * (0.03 + 0.07 * u(2)),
                         std::max(2.0, band_h * (0.05 + 0.15 * u(3))), std::cos(theta), std::sin(theta)});
    }
  }
  for (int i = 0; i < s.artifact_lines; ++i) {
    const std::uint64_t h = hash3(s.seed, kLines, static_cast<std::uint64_t>(i));
    const bool vertical = (h & 1u) != 0;
    l.lines.push_back({vertical, static_cast<int>((h >> 1) % static_cast<std::uint64_t>(vertical ? s.width : s.height))});
  }
  return l;
}

}  // namespace

void SynthSpec::validate() const {
  const auto bad = [](const std::string& msg) { fail(ErrorCode::kInvalidSpec, msg); };
  if (width < 1 || height < 1) bad("synthetic slide needs a positive size");
  if (tile_px < 16 || tile_px % 16 != 0) bad("tile_px must be a positive multiple of 16");
  if (n_levels < 1 || n_levels > 30) bad("n_levels must be in [1, 30]");
  if ((std::min(width, height) >> (n_levels - 1)) < 1) bad("too many levels for the slide size");
  if (!(glass_tile_frac >= 0.0 && glass_tile_frac <= 1.0)) bad("glass_tile_frac must be in [0, 1]");
  if (blob_count < 0) bad("blob_count must be >= 0");
  if (glass_noise_amp < 0 || glass_noise_amp > 20) bad("glass_noise_amp must be in [0, 20]");
  if (artifact_lines < 0) bad("artifact_lines must be >= 0");
  if (!(base_magnification > 0)) bad("base_magnification must be positive");
  tile_codec.validate();
  if (tile_codec.family == CodecFamily::kMockLearned) bad("the mock learned codec cannot store pyramid tiles");
}

std::string SynthSpec::to_json() const {
  const nlohmann::json j{{"seed", seed},
                         {"width", width},
                         {"height", height},
                         {"n_levels", n_levels},
                         {"tile_px", tile_px},
                         {"glass_tile_frac", glass_tile_frac},
                         {"blob_count", blob_count},
                         {"glass_noise_amp", glass_noise_amp},
                         {"artifact_lines", artifact_lines},
                         {"base_magnification", base_magnification},
                         {"tile_codec", tile_codec.label()}};
  return j.dump(2) + "\n";
}

SynthSpec SynthSpec::from_json(std::string_view text) {
  SynthSpec s;
  try {
    const nlohmann::json j = nlohmann::json::parse(text);
    if (!j.is_object()) fail(ErrorCode::kInvalidSpec, "synth spec must be a JSON object");
    s.seed = j.value("seed", s.seed);
    s.width = j.value("width", s.width);
    s.height = j.value("height", s.height);
    s.n_levels = j.value("n_levels", s.n_levels);
    s.tile_px = j.value("tile_px", s.tile_px);
    s.glass_tile_frac = j.value("glass_tile_frac", s.glass_tile_frac);
    s.blob_count = j.value("blob_count", s.blob_count);
    s.glass_noise_amp = j.value("glass_noise_amp", s.glass_noise_amp);
    s.artifact_lines = j.value("artifact_lines", s.artifact_lines);
    s.base_magnification = j.value("base_magnification", s.base_magnification);
    if (j.contains("tile_codec")) s.tile_codec = parse_codec_spec(j.at("tile_codec").get<std::string>());
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kInvalidSpec, std::string("malformed synth spec: ") + e.what());
  }
  return s;
}

SynthSlide generate_slide(const SynthSpec& spec, unsigned threads) {
  spec.validate();
  if (!codec_available(spec.tile_codec.family)) {
    fail(ErrorCode::kCodecUnavailable, spec.tile_codec.label() + " is not available in this build");
  }
  const Layout layout = make_layout(spec);
  const int w = spec.width;
  const int h = spec.height;

  std::vector<int> tissue_end(static_cast<std::size_t>(w));
  for (int x = 0; x < w; ++x) tissue_end[static_cast<std::size_t>(x)] = layout.tissue_end(x, spec.tile_px, h);

  SynthSlide out;
  out.ground_truth = BinaryMask(w, h, spec.base_magnification);
  RgbImage base(w, h);
  parallel_for(static_cast<std::size_t>(h), threads, [&](std::size_t yi) {
    const int y = static_cast<int>(yi);
    for (int x = 0; x < w; ++x) {
      const std::uint64_t idx = static_cast<std::uint64_t>(y) * static_cast<std::uint64_t>(w) + static_cast<std::uint64_t>(x);
      if (y < tissue_end[static_cast<std::size_t>(x)]) {
        out.ground_truth.set(x, y, true);
        bool nucleus = false;
        for (const Ellipse& e : layout.blobs) {
          if (e.contains(x + 0.5, y + 0.5)) {
            nucleus = true;
            break;
          }
        }
        base.set(x, y, textured(nucleus ? kSynthHematoxylin : kSynthEosin, hash3(spec.seed, kTissueNoise, idx),
                                kSynthTissueTexture));
      } else {
        const std::uint64_t hn = hash3(spec.seed, kGlassNoise, idx);
        const int a = spec.glass_noise_amp;
        base.set(x, y, {clamp_u8(kSynthGlass.r + jitter(hn, a)), clamp_u8(kSynthGlass.g + jitter(hn >> 21, a)),
                        clamp_u8(kSynthGlass.b + jitter(hn >> 42, a))});
      }
    }
  });
  for (const Line& line : layout.lines) {
    if (line.vertical) {
      for (int y = tissue_end[static_cast<std::size_t>(line.pos)]; y < h; ++y) base.set(line.pos, y, kSynthArtifact);
    } else {
      for (int x = 0; x < w; ++x) {
        if (line.pos >= tissue_end[static_cast<std::size_t>(x)]) base.set(x, line.pos, kSynthArtifact);
      }
    }
  }

  // Achieved share of all-glass tiles at level 0.
  const int across = (w + spec.tile_px - 1) / spec.tile_px;
  const int down = (h + spec.tile_px - 1) / spec.tile_px;
  std::size_t glass_tiles = 0;
  for (int r = 0; r < down; ++r) {
    for (int c = 0; c < across; ++c) {
      if (out.ground_truth.tissue_count_in(c * spec.tile_px, r * spec.tile_px, spec.tile_px, spec.tile_px) == 0) {
        ++glass_tiles;
      }
    }
  }
  out.glass_tile_frac = static_cast<double>(glass_tiles) / (static_cast<double>(across) * down);

  auto levels = make_halving_levels(w, h, spec.n_levels, spec.tile_px, spec.tile_px, spec.base_magnification);
  out.pyramid = TiledPyramid(spec.base_magnification, levels, spec.tile_codec, kWhite);
  RgbImage img = std::move(base);
  for (const PyramidLevel& lv : out.pyramid.levels()) {
    if (lv.index > 0) img = downsample_box2(img);
    const std::size_t n = lv.tile_count();
    std::vector<TileStatus> tiles(n);
    parallel_for(n, threads, [&](std::size_t i) {
      const int col = static_cast<int>(i % static_cast<std::size_t>(lv.tiles_across()));
      const int row = static_cast<int>(i / static_cast<std::size_t>(lv.tiles_across()));
      tiles[i] = encode_tile(img.crop(col * lv.tile_w, row * lv.tile_h, lv.tile_w, lv.tile_h, kWhite), spec.tile_codec);
    });
    for (std::size_t i = 0; i < n; ++i) {
      const int col = static_cast<int>(i % static_cast<std::size_t>(lv.tiles_across()));
      const int row = static_cast<int>(i / static_cast<std::size_t>(lv.tiles_across()));
      out.pyramid.set_tile({lv.index, col, row}, std::move(tiles[i]));
    }
  }
  return out;
}

}  // namespace slimslide
