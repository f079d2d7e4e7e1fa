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
#include <chrono>
#include <sstream>
#include <string>
#include <vector>

#include "json_support.hpp"
#include "slimslide/error.hpp"
#include "slimslide/glass_pipeline.hpp"
#include "slimslide/metrics.hpp"
#include "slimslide/parallel.hpp"
#include "slimslide/patcher.hpp"

namespace slimslide {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct TileJob {
  TileRef ref;
  std::size_t level_slot;
};

RecompressResult run(const TiledPyramid& src, const GlassPolicy& policy, const CodecSpec& codec,
                     const MaskSource& mask_source, const std::filesystem::path& out_path,
                     const RecompressOptions& options, Clock::time_point t_start, double read_s) {
  codec.validate();
  if (codec.family == CodecFamily::kMockLearned) {
    fail(ErrorCode::kUnsupportedCodec, "the mock learned codec cannot store pyramid tiles");
  }
  if (!codec_available(codec.family)) {
    fail(ErrorCode::kCodecUnavailable, codec.label() + " is not available in this build");
  }
  const bool has_mask = !std::holds_alternative<NoMask>(mask_source);
  if (!std::holds_alternative<KeepGlass>(policy) && !has_mask) {
    fail(ErrorCode::kMaskRequired, "glass policy '" + policy_label(policy) + "' needs a mask source");
  }

  RecompressResult result;
  result.policy = policy;
  result.codec = codec;
  result.runtime.read_s = read_s;

  // Decompress every tile once.
  auto t0 = Clock::now();
  std::vector<TileJob> jobs;
  std::vector<std::vector<RgbImage>> decoded(static_cast<std::size_t>(src.level_count()));
  for (const PyramidLevel& lv : src.levels()) {
    decoded[static_cast<std::size_t>(lv.index)].resize(lv.tile_count());
    for (int r = 0; r < lv.tiles_down(); ++r) {
      for (int c = 0; c < lv.tiles_across(); ++c) {
        jobs.push_back({{lv.index, c, r}, static_cast<std::size_t>(r) * static_cast<std::size_t>(lv.tiles_across()) +
                                              static_cast<std::size_t>(c)});
      }
    }
  }
  parallel_for(jobs.size(), options.threads, [&](std::size_t i) {
    const TileJob& j = jobs[i];
    decoded[static_cast<std::size_t>(j.ref.level)][j.level_slot] = read_tile(src, j.ref);
  });
  result.runtime.decompress_s = seconds_since(t0);

  // Segment once, then rescale to every level.
  t0 = Clock::now();
  std::vector<BinaryMask> level_masks;
  if (has_mask) {
    BinaryMask mask;
    if (const auto* th = std::get_if<ThresholdMask>(&mask_source)) {
      const int k = mask_level_for(src, th->magnification);
      const PyramidLevel& lv = src.level(k);
      RgbImage img(lv.width_px, lv.height_px, src.background_color());
      for (int r = 0; r < lv.tiles_down(); ++r) {
        for (int c = 0; c < lv.tiles_across(); ++c) {
          img.blit(decoded[static_cast<std::size_t>(k)][static_cast<std::size_t>(r) *
                                                          static_cast<std::size_t>(lv.tiles_across()) +
                                                      static_cast<std::size_t>(c)],
                   c * lv.tile_w, r * lv.tile_h);
        }
      }
      mask = morphological_close(threshold_segment(img, th->config, lv.magnification), th->config.closing_radius);
      result.mask_level = k;
    } else {
      mask = load_mask(std::get<ExternalMask>(mask_source).path);
    }
    result.mask_magnification = mask.magnification();
    result.tissue_fraction = mask.tissue_fraction();
    for (const PyramidLevel& lv : src.levels()) level_masks.push_back(rescale_mask(mask, lv.width_px, lv.height_px));
  }
  result.runtime.segment_s = seconds_since(t0);

  // Classify, apply the policy and re-encode.
  t0 = Clock::now();
  PyramidWriter writer(src.base_magnification(), src.levels(), codec, src.background_color());
  std::vector<TileKind> kinds(jobs.size(), TileKind::kAllTissue);
  std::vector<std::uint8_t> empty(jobs.size(), 0);
  parallel_for(jobs.size(), options.threads, [&](std::size_t i) {
    const TileJob& j = jobs[i];
    const PyramidLevel& lv = src.level(j.ref.level);
    const RgbImage& pixels = decoded[static_cast<std::size_t>(j.ref.level)][j.level_slot];
    TileStatus status;
    if (has_mask) {
      const BinaryMask& m = level_masks[static_cast<std::size_t>(j.ref.level)];
      const TileClass tc = classify_tile(m, lv, j.ref);
      kinds[i] = tc.kind;
      status = apply_policy(pixels, tc, m, j.ref.col * lv.tile_w, j.ref.row * lv.tile_h, policy, codec);
    } else {
      status = encode_tile(pixels, codec);
    }
    empty[i] = status.is_empty() ? 1 : 0;
    writer.submit(j.ref, std::move(status));
  });
  result.runtime.compress_s = seconds_since(t0);
  if (has_mask) {
    for (TileKind k : kinds) {
      if (k == TileKind::kAllGlass) ++result.tiles.all_glass;
      if (k == TileKind::kMixed) ++result.tiles.mixed;
      if (k == TileKind::kAllTissue) ++result.tiles.all_tissue;
    }
  }
  for (std::uint8_t e : empty) result.tiles.empty_written += e;

  t0 = Clock::now();
  result.size_bytes = writer.finalize(out_path);
  result.runtime.write_s = seconds_since(t0);

  if (options.baseline_bytes) {
    result.baseline_bytes = options.baseline_bytes;
    result.size_reduction_pct = size_reduction(result.size_bytes, *options.baseline_bytes);
  }
  // Stages are disjoint intervals inside [t_start, now], so only rounding can
  // push their sum past the total. Other absorbs the rest and total is
  // re-derived from the parts, keeping sum <= total and other >= 0 exact.
  const double named = result.runtime.named_sum();
  result.runtime.other_s = std::max(0.0, seconds_since(t_start) - named);
  result.runtime.total_s = named + result.runtime.other_s;
  return result;
}

}  // namespace

std::string_view to_string(TileKind kind) {
  switch (kind) {
    case TileKind::kAllGlass: return "all_glass";
    case TileKind::kMixed: return "mixed";
    case TileKind::kAllTissue: return "all_tissue";
  }
  return "unknown";
}

TileClass classify_tile(const BinaryMask& level_mask, const PyramidLevel& level, const TileRef& tile) {
  if (level_mask.width() != level.width_px || level_mask.height() != level.height_px) {
    fail(ErrorCode::kDimensionMismatch, "mask is " + std::to_string(level_mask.width()) + "x" +
                                            std::to_string(level_mask.height()) + ", level is " +
                                            std::to_string(level.width_px) + "x" + std::to_string(level.height_px));
  }
  if (tile.col < 0 || tile.row < 0 || tile.col >= level.tiles_across() || tile.row >= level.tiles_down()) {
    fail(ErrorCode::kInvalidArgument, "tile outside level " + std::to_string(level.index));
  }
  const int x0 = tile.col * level.tile_w;
  const int y0 = tile.row * level.tile_h;
  const int w = std::min(level.tile_w, level.width_px - x0);
  const int h = std::min(level.tile_h, level.height_px - y0);
  const std::size_t area = static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
  const std::size_t tissue = level_mask.tissue_count_in(x0, y0, w, h);
  TileClass tc;
  tc.tissue_frac = static_cast<double>(tissue) / static_cast<double>(area);
  tc.kind = tissue == 0 ? TileKind::kAllGlass : (tissue == area ? TileKind::kAllTissue : TileKind::kMixed);
  return tc;
}

std::optional<RgbImage> policy_pixels(RgbImage tile_pixels, const TileClass& tile_class, const BinaryMask& level_mask,
                                      int x0, int y0, const GlassPolicy& policy) {
  if (std::holds_alternative<KeepGlass>(policy) || tile_class.kind == TileKind::kAllTissue) return tile_pixels;
  if (const auto* single = std::get_if<SingleColor>(&policy)) {
    fill_glass(tile_pixels, level_mask, x0, y0, single->color);
    return tile_pixels;
  }
  const auto& empty = std::get<EmptyTiles>(policy);
  if (tile_class.kind == TileKind::kAllGlass) return std::nullopt;
  fill_glass(tile_pixels, level_mask, x0, y0, empty.mixed_fill);
  return tile_pixels;
}

TileStatus apply_policy(const RgbImage& tile_pixels, const TileClass& tile_class, const BinaryMask& level_mask,
                        int x0, int y0, const GlassPolicy& policy, const CodecSpec& codec) {
  auto pixels = policy_pixels(tile_pixels, tile_class, level_mask, x0, y0, policy);
  if (!pixels) return TileStatus::empty();
  return encode_tile(*pixels, codec);
}

int mask_level_for(const TiledPyramid& p, double magnification) {
  try {
    return level_for_magnification(p, magnification);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kMagnificationUnavailable) throw;
    return p.level_count() - 1;
  }
}

double size_reduction(std::uint64_t new_bytes, std::uint64_t baseline_bytes) {
  if (baseline_bytes == 0) fail(ErrorCode::kInvalidArgument, "baseline size must be positive");
  return (1.0 - static_cast<double>(new_bytes) / static_cast<double>(baseline_bytes)) * 100.0;
}

RecompressResult recompress_slide(const TiledPyramid& src, const GlassPolicy& policy, const CodecSpec& codec,
                                  const MaskSource& mask_source, const std::filesystem::path& out_path,
                                  const RecompressOptions& options) {
  return run(src, policy, codec, mask_source, out_path, options, Clock::now(), 0.0);
}

RecompressResult recompress_slide(const std::filesystem::path& src_path, const GlassPolicy& policy,
                                  const CodecSpec& codec, const MaskSource& mask_source,
                                  const std::filesystem::path& out_path, const RecompressOptions& options) {
  const auto t_start = Clock::now();
  const TiledPyramid src = open_pyramid(src_path);
  const double read_s = seconds_since(t_start);
  return run(src, policy, codec, mask_source, out_path, options, t_start, read_s);
}

std::string recompress_report_json(const RecompressResult& r) {
  nlohmann::json j;
  j["report"] = "convert";
  j["policy"] = policy_label(r.policy);
  j["codec"] = detail::codec_to_json(r.codec);
  j["size_bytes"] = r.size_bytes;
  j["size_human"] = format_size(r.size_bytes);
  j["baseline_bytes"] = r.baseline_bytes ? nlohmann::json(*r.baseline_bytes) : nlohmann::json(nullptr);
  j["size_reduction_pct"] = r.size_reduction_pct ? nlohmann::json(*r.size_reduction_pct) : nlohmann::json(nullptr);
  j["mask_level"] = r.mask_level;
  j["mask_magnification"] = r.mask_magnification;
  j["tissue_fraction"] = r.tissue_fraction;
  j["tiles"] = {{"all_glass", r.tiles.all_glass},
                {"mixed", r.tiles.mixed},
                {"all_tissue", r.tiles.all_tissue},
                {"empty_written", r.tiles.empty_written}};
  const double values[] = {r.runtime.read_s,  r.runtime.decompress_s, r.runtime.segment_s, r.runtime.compress_s,
                           r.runtime.write_s, r.runtime.other_s,      r.runtime.total_s};
  nlohmann::json runtime = nlohmann::json::object();
  for (std::size_t i = 0; i < kRuntimeColumns.size(); ++i) runtime[std::string(kRuntimeColumns[i])] = values[i];
  j["runtime_s"] = std::move(runtime);
  return j.dump(2) + "\n";
}

std::string recompress_report_csv(const RecompressResult& r) {
  std::ostringstream os;
  os << "policy,codec,size_bytes,baseline_bytes,size_reduction_pct";
  for (const auto& c : kRuntimeColumns) os << ',' << c;
  os << ",all_glass,mixed,all_tissue,empty_written\n";
  os << policy_label(r.policy) << ',' << r.codec.label() << ',' << r.size_bytes << ','
     << (r.baseline_bytes ? std::to_string(*r.baseline_bytes) : "") << ',';
  if (r.size_reduction_pct) os << *r.size_reduction_pct;
  os.precision(9);
  for (double v : {r.runtime.read_s, r.runtime.decompress_s, r.runtime.segment_s, r.runtime.compress_s,
                   r.runtime.write_s, r.runtime.other_s, r.runtime.total_s}) {
    os << ',' << v;
  }
  os << ',' << r.tiles.all_glass << ',' << r.tiles.mixed << ',' << r.tiles.all_tissue << ',' << r.tiles.empty_written
     << '\n';
  return os.str();
}

}  // namespace slimslide
