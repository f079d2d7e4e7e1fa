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

#include "commands.hpp"

#include <chrono>
#include <cstdio>
#include <map>
#include <string>

#include "slimslide/error.hpp"
#include "slimslide/glass_pipeline.hpp"
#include "slimslide/metrics.hpp"
#include "slimslide/patcher.hpp"
#include "slimslide/pyramid.hpp"
#include "slimslide/segmentation.hpp"
#include "slimslide/synth.hpp"

namespace slimslide::cli {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fixed(double v, int digits = 2) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

std::string render(const GlobalOptions& g, const nlohmann::json& report) {
  return g.report == ReportFormat::kCsv ? flat_csv(report) : report.dump(2) + "\n";
}

void ensure_parent(const std::filesystem::path& p) {
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
}

/// Patches from a patch pyramid, filtered by tissue share and optionally
/// balanced across magnifications.
std::vector<PatchRecord> select_patches(const GlobalOptions& g, const std::filesystem::path& dir, double min_tissue,
                                        std::size_t balanced, std::uint64_t seed) {
  const PatchPyramidManifest manifest = load_patch_manifest(dir);
  std::vector<PatchRecord> all = load_patch_records(dir, manifest);
  std::vector<PatchRecord> kept;
  for (auto& p : all) {
    if (p.tissue_frac > min_tissue) kept.push_back(std::move(p));
  }
  note(g, "patches: " + std::to_string(kept.size()) + " of " + std::to_string(manifest.files.size()) +
              " have more than " + fixed(min_tissue * 100, 0) + "% tissue");
  if (balanced == 0) return kept;
  std::map<double, std::vector<PatchRecord>> by_mag;
  for (auto& p : kept) by_mag[p.magnification].push_back(std::move(p));
  auto out = build_balanced_set(by_mag, balanced, seed);
  note(g, "balanced set: " + std::to_string(out.size()) + " patches over " + std::to_string(by_mag.size()) +
              " magnifications");
  return out;
}

std::string sanitize(std::string label) {
  for (char& c : label) {
    if (c == ':' || c == '/' || c == ' ') c = '_';
  }
  return label;
}

}  // namespace

int cmd_synth(const GlobalOptions& g, const SynthArgs& a) {
  nlohmann::json merged = g.config.value("synth", nlohmann::json::object());
  if (a.spec_file) {
    const Bytes raw = read_file_bytes(*a.spec_file);
    const auto file_json = nlohmann::json::parse(raw.begin(), raw.end());
    merged.update(file_json);
  }
  merged.update(a.overrides);
  const SynthSpec spec = SynthSpec::from_json(merged.dump());
  spec.validate();

  const auto t0 = Clock::now();
  const SynthSlide slide = generate_slide(spec, g.threads);
  std::filesystem::create_directories(a.out_dir);
  const auto slide_path = a.out_dir / "slide.tiff";
  const auto mask_path = a.out_dir / "ground_truth.png";
  const auto spec_path = a.out_dir / "spec.json";
  const std::uint64_t size = write_pyramid(slide.pyramid, slide_path);
  save_mask(slide.ground_truth, mask_path);
  write_text_file(spec_path, spec.to_json());

  nlohmann::json levels = nlohmann::json::array();
  for (const auto& lv : slide.pyramid.levels()) {
    levels.push_back({{"width", lv.width_px}, {"height", lv.height_px}, {"magnification", lv.magnification}});
  }
  nlohmann::json report{{"report", "synth"},
                        {"slide", slide_path.string()},
                        {"ground_truth", mask_path.string()},
                        {"spec", spec_path.string()},
                        {"size_bytes", size},
                        {"size_human", format_size(size)},
                        {"tissue_fraction", slide.ground_truth.tissue_fraction()},
                        {"glass_tile_frac", slide.glass_tile_frac},
                        {"levels", levels},
                        {"seconds", seconds_since(t0)}};
  note(g, "synth: " + slide_path.string() + " (" + format_size(size) + "), all-glass tiles " +
              fixed(slide.glass_tile_frac * 100, 1) + "%");
  emit_report(g, render(g, report));
  return kExitOk;
}

int cmd_segment(const GlobalOptions& g, const SegmentArgs& a) {
  SegmentationConfig cfg;
  cfg.threshold = a.threshold;
  cfg.closing_radius = a.radius;
  cfg.validate();
  const auto t0 = Clock::now();
  const TiledPyramid p = open_pyramid(a.input);
  const int level = a.magnification ? level_for_magnification(p, *a.magnification) : p.level_count() - 1;
  const BinaryMask mask = segment_level(p, level, cfg);
  const double seconds = seconds_since(t0);
  ensure_parent(a.output);
  save_mask(mask, a.output);

  nlohmann::json report{{"report", "segment"},
                        {"input", a.input.string()},
                        {"mask", a.output.string()},
                        {"level", level},
                        {"magnification", mask.magnification()},
                        {"width", mask.width()},
                        {"height", mask.height()},
                        {"tissue_fraction", mask.tissue_fraction()},
                        {"threshold", cfg.threshold},
                        {"closing_radius", cfg.closing_radius},
                        {"dice", nullptr},
                        {"seconds", seconds}};
  std::string line = "segment: level " + std::to_string(level) + ", tissue " + fixed(mask.tissue_fraction() * 100, 1) + "%";
  if (a.ground_truth) {
    const BinaryMask gt = load_mask(*a.ground_truth, mask.magnification());
    const double d = dice(mask, rescale_mask(gt, mask.width(), mask.height()));
    report["dice"] = d;
    line += ", Dice " + fixed(d, 4);
  }
  note(g, line);
  emit_report(g, render(g, report));
  return kExitOk;
}

int cmd_convert(const GlobalOptions& g, const ConvertArgs& a) {
  const GlassPolicy policy = parse_policy(a.policy);
  const CodecSpec codec = parse_codec_spec(a.codec);
  codec.validate();
  SegmentationConfig seg;
  seg.threshold = a.threshold;
  seg.closing_radius = a.radius;
  seg.validate();
  MaskSource source = ThresholdMask{seg, a.mask_magnification};
  if (a.mask) source = ExternalMask{*a.mask};

  RecompressOptions options;
  options.threads = g.threads;
  std::optional<std::filesystem::path> baseline_path;
  if (!a.no_baseline) {
    baseline_path = a.baseline ? *a.baseline
                               : a.output.parent_path() / (a.output.stem().string() + ".baseline.tiff");
    if (!std::filesystem::exists(*baseline_path)) {
      ensure_parent(*baseline_path);
      const auto base = recompress_slide(a.input, KeepGlass{}, CodecSpec::jpeg(90), NoMask{}, *baseline_path,
                                         {g.threads, std::nullopt});
      note(g, "baseline: " + baseline_path->string() + " (" + format_size(base.size_bytes) + ", jpeg:90 keep)");
    }
    options.baseline_bytes = file_size_bytes(*baseline_path);
  }
  ensure_parent(a.output);
  const RecompressResult r = recompress_slide(a.input, policy, codec, source, a.output, options);

  std::string line = "convert: " + a.output.string() + " " + format_size(r.size_bytes);
  if (r.size_reduction_pct) line += ", reduction " + fixed(*r.size_reduction_pct) + "%";
  line += ", total " + fixed(r.runtime.total_s, 3) + " s";
  note(g, line);
  if (g.report == ReportFormat::kCsv) {
    emit_report(g, recompress_report_csv(r));
  } else {
    auto report = nlohmann::json::parse(recompress_report_json(r));
    report["input"] = a.input.string();
    report["output"] = a.output.string();
    report["baseline"] = baseline_path ? nlohmann::json(baseline_path->string()) : nlohmann::json(nullptr);
    if (r.baseline_bytes) report["baseline_human"] = format_size(*r.baseline_bytes);
    emit_report(g, report.dump(2) + "\n");
  }
  return kExitOk;
}

int cmd_patch(const GlobalOptions& g, const PatchArgs& a) {
  PatchSpec spec;
  spec.patch_px = a.patch_px;
  spec.overlap_frac = a.overlap;
  spec.pad_color = rgb_from_hex(a.pad_color);
  spec.validate();
  const GlassPolicy policy = parse_policy(a.policy);
  PatchPyramidOptions options;
  options.seed = a.seed;
  options.threads = g.threads;
  if (a.encode) options.encode = parse_codec_spec(*a.encode);

  const auto t0 = Clock::now();
  const TiledPyramid p = open_pyramid(a.input);
  std::optional<BinaryMask> mask;
  if (a.mask) {
    mask = load_mask(*a.mask);
  } else if (!a.no_mask) {
    SegmentationConfig seg;
    seg.threshold = a.threshold;
    seg.closing_radius = a.radius;
    mask = segment_level(p, mask_level_for(p, a.mask_magnification), seg);
  }
  const PatchPyramidManifest m =
      build_patch_pyramid(p, spec, mask ? &*mask : nullptr, policy, a.output, options);

  nlohmann::json report{{"report", "patch"},
                        {"input", a.input.string()},
                        {"output", a.output.string()},
                        {"manifest", (a.output / kManifestFileName).string()},
                        {"policy", policy_label(policy)},
                        {"patch_px", spec.patch_px},
                        {"overlap_frac", spec.overlap_frac},
                        {"patches", m.files.size()},
                        {"level_counts", m.level_counts},
                        {"total_png_bytes", m.total_png_bytes},
                        {"total_png_human", format_size(m.total_png_bytes)},
                        {"total_encoded_bytes", m.total_encoded_bytes},
                        {"seconds", seconds_since(t0)}};
  note(g, "patch: " + std::to_string(m.files.size()) + " patches, " + format_size(m.total_png_bytes) + " PNG");
  emit_report(g, render(g, report));
  return kExitOk;
}

int cmd_bench(const GlobalOptions& g, const BenchArgs& a) {
  std::vector<CodecSpec> specs;
  for (const auto& s : split_list(a.codecs)) specs.push_back(parse_codec_spec(s));
  const CodecSpec baseline = parse_codec_spec(a.baseline);
  for (const auto& s : specs) s.validate();
  const std::vector<PatchRecord> patches = select_patches(g, a.input, a.min_tissue, a.balanced, a.seed);
  const auto rows = evaluate_patch_set(patches, specs, baseline, {g.threads});

  nlohmann::json worst_json = nlohmann::json::object();
  if (a.worst_dir && a.worst > 0) {
    for (const auto& row : rows) {
      if (row.skipped) continue;
      const auto cases = worst_cases(row, patches, a.worst);
      const auto dir = *a.worst_dir / sanitize(row.spec.label());
      std::filesystem::create_directories(dir);
      std::vector<std::string> files;
      for (std::size_t i = 0; i < cases.size(); ++i) {
        const auto f = dir / ("rank" + std::to_string(i) + "_diff.png");
        save_difference_map(cases[i].diff, f);
        files.push_back(f.string());
      }
      const std::string cases_json = worst_cases_to_json(cases, patches, files);
      write_text_file(dir / "worst_cases.json", cases_json);
      worst_json[row.spec.label()] = nlohmann::json::parse(cases_json);
    }
  }
  for (const auto& row : rows) {
    if (row.skipped) {
      note(g, "bench: " + row.spec.label() + " skipped (" + row.skip_reason + ")");
    } else {
      note(g, "bench: " + row.spec.label() + " ssim " + fixed(row.ssim.mean, 4) + ", bpp " + fixed(row.bpp.mean, 3) +
                  ", saved " + fixed(row.saved_space_pct.mean, 1) + "%");
    }
  }
  if (g.report == ReportFormat::kCsv) {
    emit_report(g, evaluation_to_csv(rows));
  } else {
    auto report = nlohmann::json::parse(evaluation_to_json(rows, baseline));
    report["input"] = a.input.string();
    report["patches"] = patches.size();
    report["worst_cases"] = std::move(worst_json);
    emit_report(g, report.dump(2) + "\n");
  }
  return kExitOk;
}

int cmd_rd(const GlobalOptions& g, const RdArgs& a) {
  const CodecFamily family = codec_family_from_string(a.family);
  std::vector<double> qualities;
  for (const auto& q : split_list(a.qualities)) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(q, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != q.size()) fail(ErrorCode::kInvalidArgument, "bad quality value '" + q + "'");
    qualities.push_back(v);
  }
  if (!codec_available(family)) {
    fail(ErrorCode::kCodecUnavailable, std::string(to_string(family)) + " codec not available in this build");
  }
  std::vector<RDPoint> points;
  if (!qualities.empty()) {
    const auto patches = select_patches(g, a.input, a.min_tissue, a.balanced, a.seed);
    points = rd_curve(patches, family, qualities, g.threads);
  }
  for (const auto& p : points) {
    note(g, "rd: " + p.codec_label + " bpp " + fixed(p.mean_bpp, 3) + ", ssim " + fixed(p.mean_ssim, 4));
  }
  emit_report(g, g.report == ReportFormat::kCsv ? rd_to_csv(points) : rd_to_json(points));
  return kExitOk;
}

}  // namespace slimslide::cli
