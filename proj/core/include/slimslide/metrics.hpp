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

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "slimslide/codecs.hpp"
#include "slimslide/image.hpp"
#include "slimslide/patcher.hpp"

namespace slimslide {

/// 10 log10(255^2 / MSE) with one MSE over all channels; +inf when equal.
double psnr(const RgbImage& a, const RgbImage& b);

struct SsimParams {
  int window = 11;
  double sigma = 1.5;
  double k1 = 0.01;
  double k2 = 0.03;
  double dynamic_range = 255.0;
};

/// Mean local SSIM over every full window position, per channel, averaged
/// over R, G and B. Needs both sides >= the window size.
double ssim(const RgbImage& a, const RgbImage& b, const SsimParams& params = {});

/// bytes * 8 / (w * h).
double bpp(std::uint64_t total_bytes, int width, int height);

struct SavedSpaceEntry {
  std::uint64_t compressed_bytes = 0;
  std::uint64_t jpeg_bytes = 0;
};

/// (1 - compressed / jpeg) * 100 for one patch.
double saved_space_pct(const SavedSpaceEntry& entry);
/// Mean of the per-patch percentages, not the ratio of totals. Throws
/// kEmptyInput on an empty list and kInvalidArgument when a jpeg size is 0.
double saved_space(std::span<const SavedSpaceEntry> entries);

struct AggregateStats {
  double mean = 0.0;
  double std = 0.0;  // population
  double min = 0.0;
  double max = 0.0;
  std::size_t n = 0;
};

/// Throws kEmptyInput on an empty list.
AggregateStats aggregate(std::span<const double> values);

/// Per-patch measurements for one codec setting.
struct QualityReport {
  double ssim = 0.0;
  double psnr_db = 0.0;
  std::uint64_t bytes = 0;  // primary + side
  double bpp = 0.0;
  double saved_space_pct = 0.0;
  double dec_time_s = 0.0;
};

/// Decodes before this index are warm-up and excluded from the mean decode
/// time, unless there are no more than this many patches.
inline constexpr std::size_t kDecodeWarmup = 10;

struct SpecEvaluation {
  CodecSpec spec;
  bool skipped = false;
  std::string skip_reason;
  AggregateStats ssim;
  AggregateStats psnr_db;
  AggregateStats bpp;
  AggregateStats saved_space_pct;  // mean is the per-patch saved space
  std::uint64_t total_bytes = 0;
  std::uint64_t total_baseline_bytes = 0;
  double total_saved_pct = 0.0;  // ratio of totals, for comparison
  double mean_dec_time_s = 0.0;
  std::size_t timed_decodes = 0;
  std::vector<QualityReport> per_patch;
};

struct EvaluationOptions {
  unsigned threads = 0;
};

/// Encodes and decodes every patch with every spec. Unavailable codecs give a
/// skipped row. Decodes are timed serially; everything else may run in
/// parallel.
std::vector<SpecEvaluation> evaluate_patch_set(const std::vector<PatchRecord>& patches,
                                               const std::vector<CodecSpec>& specs,
                                               const CodecSpec& baseline = CodecSpec::jpeg(90),
                                               const EvaluationOptions& options = {});

struct RDPoint {
  std::string codec_label;
  double quality_param = 0.0;
  double mean_bpp = 0.0;
  double mean_ssim = 0.0;
  double mean_psnr = 0.0;
  std::size_t n = 0;
};

/// One point per quality, sorted by ascending mean bpp.
std::vector<RDPoint> rd_curve(const std::vector<PatchRecord>& patches, CodecFamily family,
                              const std::vector<double>& qualities, unsigned threads = 0);

/// Signed grey-level difference: mean(decoded RGB) - mean(original RGB).
struct DifferenceMap {
  int width = 0;
  int height = 0;
  std::vector<double> values;
  [[nodiscard]] double at(int x, int y) const noexcept {
    return values[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) + static_cast<std::size_t>(x)];
  }
};

DifferenceMap difference_map(const RgbImage& original, const RgbImage& decoded);

/// 16-bit grey PNG holding 3 * value + 32768, with tEXt `scale` and `offset`.
void save_difference_map(const DifferenceMap& map, const std::filesystem::path& path);
DifferenceMap load_difference_map(const std::filesystem::path& path);

struct WorstCase {
  std::size_t patch_index = 0;
  double ssim = 0.0;
  DifferenceMap diff;
};

/// The k patches with the lowest SSIM in `evaluation`, ascending (ties by
/// index); all of them when k exceeds the set.
std::vector<WorstCase> worst_cases(const SpecEvaluation& evaluation, const std::vector<PatchRecord>& patches,
                                   std::size_t k);

/// Byte counts with 1 kB = 1024 bytes: `812 B`, `4.0 kB`, `465.2 MB`.
std::string format_size(std::uint64_t bytes);

/// Table-style reports. Non-finite numbers are written as `inf`.
std::string evaluation_to_json(const std::vector<SpecEvaluation>& rows, const CodecSpec& baseline);
std::string evaluation_to_csv(const std::vector<SpecEvaluation>& rows);
/// Header `codec,quality,bpp,ssim,psnr,n`.
std::string rd_to_csv(const std::vector<RDPoint>& points);
std::string rd_to_json(const std::vector<RDPoint>& points);
std::string worst_cases_to_json(const std::vector<WorstCase>& cases, const std::vector<PatchRecord>& patches,
                                const std::vector<std::string>& diff_files);

}  // namespace slimslide
