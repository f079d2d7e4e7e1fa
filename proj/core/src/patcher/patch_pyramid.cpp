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
#include <optional>
#include <string>

#include "json_support.hpp"
#include "slimslide/error.hpp"
#include "slimslide/parallel.hpp"
#include "slimslide/patcher.hpp"
#include "slimslide/png_io.hpp"

namespace slimslide {
namespace {

constexpr const char* kManifestFormat = "slimslide-patch-pyramid";
constexpr int kManifestVersion = 1;

std::string patch_stem(int level, int x, int y) {
  return "level_" + std::to_string(level) + "/x" + std::to_string(x) + "_y" + std::to_string(y);
}

void ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) fail(ErrorCode::kIoFailure, dir.string() + ": " + ec.message());
}

}  // namespace

std::string PatchPyramidManifest::to_json() const {
  nlohmann::json j;
  j["format"] = kManifestFormat;
  j["version"] = kManifestVersion;
  j["spec"] = {{"patch_px", spec.patch_px},
               {"overlap_frac", spec.overlap_frac},
               {"min_tissue_frac", spec.min_tissue_frac},
               {"magnification", spec.magnification},
               {"pad_color", to_hex(spec.pad_color)}};
  j["policy"] = policy_label(policy);
  j["codec"] = codec ? detail::codec_to_json(*codec) : nlohmann::json(nullptr);
  j["seed"] = seed;
  j["level_counts"] = level_counts;
  j["level_magnifications"] = level_magnifications;
  j["total_png_bytes"] = total_png_bytes;
  j["total_encoded_bytes"] = total_encoded_bytes;
  auto& files_json = j["files"] = nlohmann::json::array();
  for (const PatchFileEntry& f : files) {
    nlohmann::json e{{"level", f.level},          {"x", f.origin_x},
                     {"y", f.origin_y},           {"png", f.png_file},
                     {"png_bytes", f.png_bytes},  {"tissue_frac", f.tissue_frac}};
    if (!f.encoded_file.empty()) {
      e["encoded"] = f.encoded_file;
      e["encoded_bytes"] = f.encoded_bytes;
      if (!f.side_file.empty()) e["side"] = f.side_file;
    }
    files_json.push_back(std::move(e));
  }
  return j.dump(2) + "\n";
}

PatchPyramidManifest PatchPyramidManifest::from_json(std::string_view text) {
  PatchPyramidManifest m;
  try {
    const nlohmann::json j = nlohmann::json::parse(text);
    if (j.at("format").get<std::string>() != kManifestFormat) {
      fail(ErrorCode::kInvalidArgument, "not a patch pyramid manifest");
    }
    const auto& s = j.at("spec");
    m.spec.patch_px = s.at("patch_px").get<int>();
    m.spec.overlap_frac = s.at("overlap_frac").get<double>();
    m.spec.min_tissue_frac = s.at("min_tissue_frac").get<double>();
    m.spec.magnification = s.at("magnification").get<double>();
    m.spec.pad_color = rgb_from_hex(s.at("pad_color").get<std::string>());
    m.policy = parse_policy(j.at("policy").get<std::string>());
    if (!j.at("codec").is_null()) m.codec = detail::codec_from_json(j.at("codec"));
    m.seed = j.at("seed").get<std::uint64_t>();
    m.level_counts = j.at("level_counts").get<std::vector<std::size_t>>();
    m.level_magnifications = j.at("level_magnifications").get<std::vector<double>>();
    m.total_png_bytes = j.at("total_png_bytes").get<std::uint64_t>();
    m.total_encoded_bytes = j.at("total_encoded_bytes").get<std::uint64_t>();
    for (const auto& e : j.at("files")) {
      PatchFileEntry f;
      f.level = e.at("level").get<int>();
      f.origin_x = e.at("x").get<int>();
      f.origin_y = e.at("y").get<int>();
      f.png_file = e.at("png").get<std::string>();
      f.png_bytes = e.at("png_bytes").get<std::uint64_t>();
      f.tissue_frac = e.at("tissue_frac").get<double>();
      f.encoded_file = e.value("encoded", std::string{});
      f.encoded_bytes = e.value("encoded_bytes", std::uint64_t{0});
      f.side_file = e.value("side", std::string{});
      m.files.push_back(std::move(f));
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kInvalidArgument, std::string("malformed manifest: ") + e.what());
  }
  return m;
}

PatchPyramidManifest build_patch_pyramid(const TiledPyramid& p, const PatchSpec& spec, const BinaryMask* mask,
                                         const GlassPolicy& policy, const std::filesystem::path& out_dir,
                                         const PatchPyramidOptions& options) {
  spec.validate();
  if (!std::holds_alternative<KeepGlass>(policy) && mask == nullptr) {
    fail(ErrorCode::kMaskRequired, "glass policy '" + policy_label(policy) + "' needs a tissue mask");
  }
  if (options.encode) {
    options.encode->validate();
    if (!codec_available(options.encode->family)) {
      fail(ErrorCode::kCodecUnavailable, options.encode->label() + " is not available in this build");
    }
  }

  PatchPyramidManifest manifest;
  manifest.spec = spec;
  manifest.policy = policy;
  manifest.codec = options.encode;
  manifest.seed = options.seed;
  ensure_dir(out_dir);

  for (const PyramidLevel& lv : p.levels()) {
    const std::vector<PatchOrigin> origins = plan_patches(lv.width_px, lv.height_px, spec);
    std::optional<BinaryMask> level_mask;
    if (mask != nullptr) level_mask = rescale_mask(*mask, lv.width_px, lv.height_px);
    ensure_dir(out_dir / ("level_" + std::to_string(lv.index)));
    if (options.encode) ensure_dir(out_dir / "encoded" / ("level_" + std::to_string(lv.index)));
    const double area = static_cast<double>(spec.patch_px) * static_cast<double>(spec.patch_px);

    std::vector<std::optional<PatchFileEntry>> slots(origins.size());
    parallel_for(origins.size(), options.threads, [&](std::size_t i) {
      const PatchOrigin o = origins[i];
      PatchFileEntry entry;
      entry.level = lv.index;
      entry.origin_x = o.x;
      entry.origin_y = o.y;
      std::size_t tissue = static_cast<std::size_t>(area);
      if (level_mask) tissue = level_mask->tissue_count_in(o.x, o.y, spec.patch_px, spec.patch_px);
      entry.tissue_frac = static_cast<double>(tissue) / area;
      if (std::holds_alternative<EmptyTiles>(policy) && tissue == 0) return;

      RgbImage pixels = read_region(p, lv.index, o.x, o.y, spec.patch_px, spec.patch_px);
      if (const auto* single = std::get_if<SingleColor>(&policy)) {
        fill_glass(pixels, *level_mask, o.x, o.y, single->color);
      } else if (const auto* empty = std::get_if<EmptyTiles>(&policy)) {
        fill_glass(pixels, *level_mask, o.x, o.y, empty->mixed_fill);
      }
      const int inside_w = std::min(spec.patch_px, lv.width_px - o.x);
      const int inside_h = std::min(spec.patch_px, lv.height_px - o.y);
      for (int y = 0; y < spec.patch_px; ++y) {
        for (int x = (y < inside_h ? inside_w : 0); x < spec.patch_px; ++x) pixels.set(x, y, spec.pad_color);
      }

      const std::string stem = patch_stem(lv.index, o.x, o.y);
      entry.png_file = stem + ".png";
      const Bytes png_bytes = png::encode_rgb(pixels);
      write_file_bytes(out_dir / entry.png_file, png_bytes);
      entry.png_bytes = png_bytes.size();
      if (options.encode) {
        const EncodedPatch enc = encode(pixels, *options.encode);
        entry.encoded_file = "encoded/" + stem + primary_extension(options.encode->family);
        write_file_bytes(out_dir / entry.encoded_file, enc.primary);
        if (enc.side) {
          entry.side_file = "encoded/" + stem + std::string(kSideExtension);
          write_file_bytes(out_dir / entry.side_file, *enc.side);
        }
        entry.encoded_bytes = enc.total_bytes();
      }
      slots[i] = std::move(entry);
    });

    std::size_t count = 0;
    for (auto& s : slots) {
      if (!s) continue;
      manifest.total_png_bytes += s->png_bytes;
      manifest.total_encoded_bytes += s->encoded_bytes;
      manifest.files.push_back(std::move(*s));
      ++count;
    }
    manifest.level_counts.push_back(count);
    manifest.level_magnifications.push_back(lv.magnification);
  }
  write_text_file(out_dir / kManifestFileName, manifest.to_json());
  return manifest;
}

PatchPyramidManifest load_patch_manifest(const std::filesystem::path& dir) {
  const Bytes raw = read_file_bytes(dir / kManifestFileName);
  return PatchPyramidManifest::from_json(
      std::string_view(reinterpret_cast<const char*>(raw.data()), raw.size()));
}

std::vector<PatchRecord> load_patch_records(const std::filesystem::path& dir, const PatchPyramidManifest& manifest) {
  std::vector<PatchRecord> out;
  out.reserve(manifest.files.size());
  for (const PatchFileEntry& f : manifest.files) {
    PatchRecord rec;
    rec.source_level = f.level;
    rec.origin_x = f.origin_x;
    rec.origin_y = f.origin_y;
    rec.tissue_frac = f.tissue_frac;
    if (f.level >= 0 && static_cast<std::size_t>(f.level) < manifest.level_magnifications.size()) {
      rec.magnification = manifest.level_magnifications[static_cast<std::size_t>(f.level)];
    }
    rec.pixels = png::decode_rgb(read_file_bytes(dir / f.png_file));
    if (rec.pixels.width() != manifest.spec.patch_px || rec.pixels.height() != manifest.spec.patch_px) {
      fail(ErrorCode::kDimensionMismatch, f.png_file + " is not " + std::to_string(manifest.spec.patch_px) +
                                              " px square");
    }
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace slimslide
