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

// slimslide command-line frontend. Option precedence: flags, then the
// `--config` JSON file (top-level globals plus one object per subcommand),
// then built-in defaults.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "slimslide/error.hpp"
#include "slimslide/io.hpp"
#include "slimslide/parallel.hpp"

namespace {

using namespace slimslide;
using namespace slimslide::cli;
using nlohmann::json;

/// Fills `value` from `section[key]` unless the flag was given.
template <typename T>
void from_config(const CLI::Option* opt, const json& section, const char* key, T& value) {
  if (opt->count() > 0 || !section.is_object() || !section.contains(key)) return;
  value = section.at(key).get<T>();
}

template <typename T>
void from_config(const CLI::Option* opt, const json& section, const char* key, std::optional<T>& value) {
  if (opt->count() > 0 || !section.is_object() || !section.contains(key) || section.at(key).is_null()) return;
  value = section.at(key).get<T>();
}

void from_config(const CLI::Option* opt, const json& section, const char* key, std::filesystem::path& value) {
  if (opt->count() > 0 || !section.is_object() || !section.contains(key)) return;
  value = section.at(key).get<std::string>();
}

void from_config(const CLI::Option* opt, const json& section, const char* key,
                 std::optional<std::filesystem::path>& value) {
  if (opt->count() > 0 || !section.is_object() || !section.contains(key) || section.at(key).is_null()) return;
  value = section.at(key).get<std::string>();
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kInvalidSpec:
    case ErrorCode::kMaskRequired:
      return kExitUsage;
    case ErrorCode::kIoFailure:
    case ErrorCode::kNotTiled:
    case ErrorCode::kUnsupportedCodec:
    case ErrorCode::kCorruptDirectory:
      return kExitIo;
    case ErrorCode::kCodecUnavailable:
      return kExitCodecMissing;
    case ErrorCode::kInvalidDimensions:
    case ErrorCode::kDimensionMismatch:
    case ErrorCode::kEncodeFailure:
    case ErrorCode::kDecodeFailure:
    case ErrorCode::kInvalidLevel:
    case ErrorCode::kInsufficientPatches:
    case ErrorCode::kMissingPatch:
    case ErrorCode::kEmptyInput:
    case ErrorCode::kMagnificationUnavailable:
      return kExitData;
  }
  return kExitRuntime;
}

constexpr const char* kExitCodeHelp =
    "Exit codes: 0 ok, 1 unexpected failure, 2 usage or invalid parameters, 3 file I/O or malformed input file,\n"
    "4 codec not available in this build, 5 inputs inconsistent with the request.";

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"slimslide: glass removal and compression benchmarks for whole-slide image pyramids", "slimslide"};
  app.footer(kExitCodeHelp);
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  app.set_version_flag("--version", "slimslide 0.3.0");

  GlobalOptions g;
  std::string report = "json";
  std::optional<std::string> report_file;
  std::optional<std::string> config_path;
  auto* o_threads = app.add_option("--threads", g.threads,
                                   std::string("Worker threads (0 = $") + kThreadsEnvVar + " or all cores)");
  auto* o_report = app.add_option("--report", report, "Report format")->check(CLI::IsMember({"json", "csv"}));
  auto* o_report_file = app.add_option("--report-file", report_file, "Write the report here instead of stdout");
  app.add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
  app.add_flag("-q,--quiet", g.quiet, "No progress lines on stderr");

  // synth
  SynthArgs synth;
  std::optional<std::string> synth_spec;
  std::string synth_out;
  std::optional<std::uint64_t> s_seed;
  std::optional<int> s_width, s_height, s_levels, s_tile, s_blobs, s_noise, s_lines;
  std::optional<double> s_glass, s_mag;
  std::optional<std::string> s_codec;
  auto* c_synth = app.add_subcommand("synth", "Generate a synthetic slide, its ground-truth mask and spec");
  c_synth->add_option("--spec", synth_spec, "SynthSpec JSON file")->check(CLI::ExistingFile);
  auto* os_out = c_synth->add_option("-o,--out", synth_out, "Output directory");
  c_synth->add_option("--seed", s_seed);
  c_synth->add_option("--width", s_width);
  c_synth->add_option("--height", s_height);
  c_synth->add_option("--levels", s_levels);
  c_synth->add_option("--tile", s_tile);
  c_synth->add_option("--glass-frac", s_glass, "Share of all-glass tile rows in [0, 1]");
  c_synth->add_option("--blobs", s_blobs);
  c_synth->add_option("--noise", s_noise, "Glass noise amplitude 0..20");
  c_synth->add_option("--lines", s_lines, "Artifact lines on glass");
  c_synth->add_option("--magnification", s_mag, "Base magnification");
  c_synth->add_option("--codec", s_codec, "Tile codec, e.g. jpeg:90");

  // segment
  SegmentArgs seg;
  auto* c_seg = app.add_subcommand("segment", "Threshold + closing tissue mask of one level");
  auto* og_in = c_seg->add_option("-i,--in", seg.input, "Input TIFF pyramid");
  auto* og_out = c_seg->add_option("-o,--out", seg.output, "Output mask PNG");
  auto* og_thr = c_seg->add_option("--threshold", seg.threshold);
  auto* og_rad = c_seg->add_option("--radius", seg.radius, "Closing disk radius");
  auto* og_mag = c_seg->add_option("--magnification", seg.magnification, "Level nearest this magnification");
  auto* og_gt = c_seg->add_option("--ground-truth", seg.ground_truth, "Mask PNG to compute Dice against");

  // convert
  ConvertArgs conv;
  auto* c_conv = app.add_subcommand("convert", "Rewrite a pyramid with a glass policy and codec");
  auto* oc_in = c_conv->add_option("-i,--in", conv.input, "Input TIFF pyramid");
  auto* oc_out = c_conv->add_option("-o,--out", conv.output, "Output TIFF pyramid");
  auto* oc_pol = c_conv->add_option("--policy", conv.policy, "keep | white | single:RRGGBB | empty[:RRGGBB]");
  auto* oc_codec = c_conv->add_option("--codec", conv.codec, "Tile codec, e.g. jpeg:90, png, jpeg2000:37");
  auto* oc_mask = c_conv->add_option("--mask", conv.mask, "External mask PNG instead of thresholding");
  auto* oc_mmag = c_conv->add_option("--mask-magnification", conv.mask_magnification);
  auto* oc_thr = c_conv->add_option("--threshold", conv.threshold);
  auto* oc_rad = c_conv->add_option("--radius", conv.radius);
  auto* oc_base = c_conv->add_option("--baseline", conv.baseline,
                                     "Baseline TIFF; created as jpeg:90 keep if missing");
  auto* oc_nobase = c_conv->add_flag("--no-baseline", conv.no_baseline, "Skip the size-reduction baseline");

  // patch
  PatchArgs patch;
  auto* c_patch = app.add_subcommand("patch", "Build a patch pyramid directory");
  auto* op_in = c_patch->add_option("-i,--in", patch.input, "Input TIFF pyramid");
  auto* op_out = c_patch->add_option("-o,--out", patch.output, "Output directory");
  auto* op_px = c_patch->add_option("--patch", patch.patch_px, "Patch side in pixels");
  auto* op_ov = c_patch->add_option("--overlap", patch.overlap, "Overlap fraction in [0, 0.5)");
  auto* op_pol = c_patch->add_option("--policy", patch.policy);
  auto* op_mask = c_patch->add_option("--mask", patch.mask, "External mask PNG");
  auto* op_nomask = c_patch->add_flag("--no-mask", patch.no_mask, "Do not segment; every patch counts as tissue");
  auto* op_mmag = c_patch->add_option("--mask-magnification", patch.mask_magnification);
  auto* op_thr = c_patch->add_option("--threshold", patch.threshold);
  auto* op_rad = c_patch->add_option("--radius", patch.radius);
  auto* op_enc = c_patch->add_option("--encode", patch.encode, "Also store patches with this codec");
  auto* op_pad = c_patch->add_option("--pad-color", patch.pad_color, "Edge padding RRGGBB");
  auto* op_seed = c_patch->add_option("--seed", patch.seed);

  // bench
  BenchArgs bench;
  auto* c_bench = app.add_subcommand("bench", "Quality, size and decode-time table for a patch pyramid");
  auto* ob_in = c_bench->add_option("-i,--in", bench.input, "Patch pyramid directory");
  auto* ob_codecs = c_bench->add_option("--codecs", bench.codecs, "Comma-separated codec list");
  auto* ob_base = c_bench->add_option("--baseline", bench.baseline, "Saved-space reference codec");
  auto* ob_min = c_bench->add_option("--min-tissue", bench.min_tissue, "Keep patches with more tissue than this");
  auto* ob_bal = c_bench->add_option("--balanced", bench.balanced, "Patches per magnification (0 = all)");
  auto* ob_seed = c_bench->add_option("--seed", bench.seed);
  auto* ob_worst = c_bench->add_option("--worst", bench.worst, "Lowest-SSIM patches to export per codec");
  auto* ob_wdir = c_bench->add_option("--worst-dir", bench.worst_dir, "Directory for difference maps");

  // rd
  RdArgs rd;
  auto* c_rd = app.add_subcommand("rd", "Rate-distortion points for one codec family");
  auto* or_in = c_rd->add_option("-i,--in", rd.input, "Patch pyramid directory");
  auto* or_fam = c_rd->add_option("--family", rd.family, "jpeg | jpegxl | jpeg2000 | mock");
  auto* or_q = c_rd->add_option("--qualities", rd.qualities, "Comma-separated quality values");
  auto* or_min = c_rd->add_option("--min-tissue", rd.min_tissue);
  auto* or_bal = c_rd->add_option("--balanced", rd.balanced);
  auto* or_seed = c_rd->add_option("--seed", rd.seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (config_path) {
      const Bytes raw = read_file_bytes(*config_path);
      try {
        g.config = json::parse(raw.begin(), raw.end());
      } catch (const json::exception& e) {
        fail(ErrorCode::kInvalidArgument, *config_path + ": " + e.what());
      }
      if (!g.config.is_object()) fail(ErrorCode::kInvalidArgument, *config_path + ": config must be an object");
    }
    const json& cfg = g.config;
    from_config(o_threads, cfg, "threads", g.threads);
    from_config(o_report, cfg, "report", report);
    from_config(o_report_file, cfg, "report_file", report_file);
    if (report != "json" && report != "csv") fail(ErrorCode::kInvalidArgument, "report must be json or csv");
    g.report = report == "csv" ? ReportFormat::kCsv : ReportFormat::kJson;
    if (report_file) g.report_file = *report_file;
    if (g.threads == 0) g.threads = default_thread_count();

    const auto require = [](const CLI::Option* opt, bool present) {
      if (!present) fail(ErrorCode::kInvalidArgument, opt->get_name() + " is required");
    };

    if (c_synth->parsed()) {
      const json sec = cfg.value("synth", json::object());
      if (os_out->count() == 0 && sec.contains("out")) synth_out = sec.at("out").get<std::string>();
      require(os_out, !synth_out.empty());
      synth.out_dir = synth_out;
      if (synth_spec) synth.spec_file = *synth_spec;
      json& ov = synth.overrides;
      if (s_seed) ov["seed"] = *s_seed;
      if (s_width) ov["width"] = *s_width;
      if (s_height) ov["height"] = *s_height;
      if (s_levels) ov["n_levels"] = *s_levels;
      if (s_tile) ov["tile_px"] = *s_tile;
      if (s_glass) ov["glass_tile_frac"] = *s_glass;
      if (s_blobs) ov["blob_count"] = *s_blobs;
      if (s_noise) ov["glass_noise_amp"] = *s_noise;
      if (s_lines) ov["artifact_lines"] = *s_lines;
      if (s_mag) ov["base_magnification"] = *s_mag;
      if (s_codec) ov["tile_codec"] = *s_codec;
      // The subcommand section may carry "out"; it is not a spec key.
      if (g.config.contains("synth") && g.config["synth"].is_object()) g.config["synth"].erase("out");
      return cmd_synth(g, synth);
    }
    if (c_seg->parsed()) {
      const json sec = cfg.value("segment", json::object());
      from_config(og_in, sec, "in", seg.input);
      from_config(og_out, sec, "out", seg.output);
      from_config(og_thr, sec, "threshold", seg.threshold);
      from_config(og_rad, sec, "radius", seg.radius);
      from_config(og_mag, sec, "magnification", seg.magnification);
      from_config(og_gt, sec, "ground_truth", seg.ground_truth);
      require(og_in, !seg.input.empty());
      require(og_out, !seg.output.empty());
      return cmd_segment(g, seg);
    }
    if (c_conv->parsed()) {
      const json sec = cfg.value("convert", json::object());
      from_config(oc_in, sec, "in", conv.input);
      from_config(oc_out, sec, "out", conv.output);
      from_config(oc_pol, sec, "policy", conv.policy);
      from_config(oc_codec, sec, "codec", conv.codec);
      from_config(oc_mask, sec, "mask", conv.mask);
      from_config(oc_mmag, sec, "mask_magnification", conv.mask_magnification);
      from_config(oc_thr, sec, "threshold", conv.threshold);
      from_config(oc_rad, sec, "radius", conv.radius);
      from_config(oc_base, sec, "baseline", conv.baseline);
      from_config(oc_nobase, sec, "no_baseline", conv.no_baseline);
      require(oc_in, !conv.input.empty());
      require(oc_out, !conv.output.empty());
      return cmd_convert(g, conv);
    }
    if (c_patch->parsed()) {
      const json sec = cfg.value("patch", json::object());
      from_config(op_in, sec, "in", patch.input);
      from_config(op_out, sec, "out", patch.output);
      from_config(op_px, sec, "patch", patch.patch_px);
      from_config(op_ov, sec, "overlap", patch.overlap);
      from_config(op_pol, sec, "policy", patch.policy);
      from_config(op_mask, sec, "mask", patch.mask);
      from_config(op_nomask, sec, "no_mask", patch.no_mask);
      from_config(op_mmag, sec, "mask_magnification", patch.mask_magnification);
      from_config(op_thr, sec, "threshold", patch.threshold);
      from_config(op_rad, sec, "radius", patch.radius);
      from_config(op_enc, sec, "encode", patch.encode);
      from_config(op_pad, sec, "pad_color", patch.pad_color);
      from_config(op_seed, sec, "seed", patch.seed);
      require(op_in, !patch.input.empty());
      require(op_out, !patch.output.empty());
      return cmd_patch(g, patch);
    }
    if (c_bench->parsed()) {
      const json sec = cfg.value("bench", json::object());
      from_config(ob_in, sec, "in", bench.input);
      from_config(ob_codecs, sec, "codecs", bench.codecs);
      from_config(ob_base, sec, "baseline", bench.baseline);
      from_config(ob_min, sec, "min_tissue", bench.min_tissue);
      from_config(ob_bal, sec, "balanced", bench.balanced);
      from_config(ob_seed, sec, "seed", bench.seed);
      from_config(ob_worst, sec, "worst", bench.worst);
      from_config(ob_wdir, sec, "worst_dir", bench.worst_dir);
      require(ob_in, !bench.input.empty());
      return cmd_bench(g, bench);
    }
    if (c_rd->parsed()) {
      const json sec = cfg.value("rd", json::object());
      from_config(or_in, sec, "in", rd.input);
      from_config(or_fam, sec, "family", rd.family);
      from_config(or_q, sec, "qualities", rd.qualities);
      from_config(or_min, sec, "min_tissue", rd.min_tissue);
      from_config(or_bal, sec, "balanced", rd.balanced);
      from_config(or_seed, sec, "seed", rd.seed);
      require(or_in, !rd.input.empty());
      return cmd_rd(g, rd);
    }
  } catch (const Error& e) {
    std::cerr << "slimslide: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const json::exception& e) {
    std::cerr << "slimslide: bad JSON: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "slimslide: IoFailure: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "slimslide: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}
