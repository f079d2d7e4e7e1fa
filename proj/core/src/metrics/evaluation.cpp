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
#include <numeric>
#include <string>

#include "slimslide/error.hpp"
#include "slimslide/metrics.hpp"
#include "slimslide/parallel.hpp"

namespace slimslide {
namespace {

std::vector<EncodedPatch> encode_all(const std::vector<PatchRecord>& patches, const CodecSpec& spec, unsigned threads) {
  std::vector<EncodedPatch> out(patches.size());
  parallel_for(patches.size(), threads, [&](std::size_t i) { out[i] = encode(patches[i].pixels, spec); });
  return out;
}

/// Serial so that timings are not skewed by contention.
std::vector<TimedDecode> decode_all_timed(const std::vector<EncodedPatch>& encoded, const CodecSpec& spec) {
  std::vector<TimedDecode> out;
  out.reserve(encoded.size());
  for (const auto& e : encoded) out.push_back(timed_decode(e, spec));
  return out;
}

void require_patches(const std::vector<PatchRecord>& patches) {
  if (patches.empty()) fail(ErrorCode::kEmptyInput, "no patches to evaluate");
}

}  // namespace

std::vector<SpecEvaluation> evaluate_patch_set(const std::vector<PatchRecord>& patches,
                                               const std::vector<CodecSpec>& specs, const CodecSpec& baseline,
                                               const EvaluationOptions& options) {
  require_patches(patches);
  baseline.validate();
  if (!codec_available(baseline.family)) {
    fail(ErrorCode::kCodecUnavailable, "baseline codec " + baseline.label() + " is not available in this build");
  }
  std::vector<std::uint64_t> baseline_bytes(patches.size());
  {
    const auto enc = encode_all(patches, baseline, options.threads);
    for (std::size_t i = 0; i < enc.size(); ++i) baseline_bytes[i] = enc[i].total_bytes();
  }
  const std::uint64_t baseline_total = std::accumulate(baseline_bytes.begin(), baseline_bytes.end(), std::uint64_t{0});

  std::vector<SpecEvaluation> rows;
  for (const CodecSpec& spec : specs) {
    SpecEvaluation row;
    row.spec = spec;
    row.total_baseline_bytes = baseline_total;
    spec.validate();
    if (!codec_available(spec.family)) {
      row.skipped = true;
      row.skip_reason = std::string(to_string(spec.family)) + " codec not available in this build";
      rows.push_back(std::move(row));
      continue;
    }
    const auto encoded = encode_all(patches, spec, options.threads);
    const auto decoded = decode_all_timed(encoded, spec);
    row.per_patch.resize(patches.size());
    parallel_for(patches.size(), options.threads, [&](std::size_t i) {
      const RgbImage& orig = patches[i].pixels;
      QualityReport& q = row.per_patch[i];
      q.ssim = ssim(orig, decoded[i].image);
      q.psnr_db = psnr(orig, decoded[i].image);
      q.bytes = encoded[i].total_bytes();
      q.bpp = bpp(q.bytes, orig.width(), orig.height());
      q.saved_space_pct = saved_space_pct({q.bytes, baseline_bytes[i]});
      q.dec_time_s = decoded[i].seconds;
    });

    std::vector<double> v(patches.size());
    const auto collect = [&](auto field) {
      std::transform(row.per_patch.begin(), row.per_patch.end(), v.begin(), field);
      return aggregate(v);
    };
    row.ssim = collect([](const QualityReport& q) { return q.ssim; });
    row.psnr_db = collect([](const QualityReport& q) { return q.psnr_db; });
    row.bpp = collect([](const QualityReport& q) { return q.bpp; });
    row.saved_space_pct = collect([](const QualityReport& q) { return q.saved_space_pct; });
    for (const auto& q : row.per_patch) row.total_bytes += q.bytes;
    row.total_saved_pct =
        (1.0 - static_cast<double>(row.total_bytes) / static_cast<double>(baseline_total)) * 100.0;

    const std::size_t first = patches.size() > kDecodeWarmup ? kDecodeWarmup : 0;
    double t = 0.0;
    for (std::size_t i = first; i < row.per_patch.size(); ++i) t += row.per_patch[i].dec_time_s;
    row.timed_decodes = row.per_patch.size() - first;
    row.mean_dec_time_s = t / static_cast<double>(row.timed_decodes);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<RDPoint> rd_curve(const std::vector<PatchRecord>& patches, CodecFamily family,
                              const std::vector<double>& qualities, unsigned threads) {
  if (qualities.empty()) return {};
  require_patches(patches);
  if (!codec_available(family)) {
    fail(ErrorCode::kCodecUnavailable, std::string(to_string(family)) + " codec not available in this build");
  }
  std::vector<RDPoint> points;
  for (double quality : qualities) {
    CodecSpec spec = parse_codec_spec(to_string(family));
    spec.quality = quality;
    spec.validate();
    std::vector<double> bpps(patches.size()), ssims(patches.size()), psnrs(patches.size());
    parallel_for(patches.size(), threads, [&](std::size_t i) {
      const RgbImage& orig = patches[i].pixels;
      const EncodedPatch enc = encode(orig, spec);
      const RgbImage dec = decode(enc, spec);
      bpps[i] = bpp(enc.total_bytes(), orig.width(), orig.height());
      ssims[i] = ssim(orig, dec);
      psnrs[i] = psnr(orig, dec);
    });
    RDPoint pt;
    pt.codec_label = spec.label();
    pt.quality_param = quality;
    pt.mean_bpp = aggregate(bpps).mean;
    pt.mean_ssim = aggregate(ssims).mean;
    pt.mean_psnr = aggregate(psnrs).mean;
    pt.n = patches.size();
    points.push_back(std::move(pt));
  }
  std::stable_sort(points.begin(), points.end(),
                   [](const RDPoint& a, const RDPoint& b) { return a.mean_bpp < b.mean_bpp; });
  return points;
}

std::vector<WorstCase> worst_cases(const SpecEvaluation& evaluation, const std::vector<PatchRecord>& patches,
                                   std::size_t k) {
  if (evaluation.skipped) return {};
  if (evaluation.per_patch.size() != patches.size()) {
    fail(ErrorCode::kDimensionMismatch, "evaluation and patch list have different lengths");
  }
  std::vector<std::size_t> order(patches.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return evaluation.per_patch[a].ssim < evaluation.per_patch[b].ssim;
  });
  order.resize(std::min(k, order.size()));
  std::vector<WorstCase> out;
  out.reserve(order.size());
  for (std::size_t i : order) {
    const RgbImage decoded = decode(encode(patches[i].pixels, evaluation.spec), evaluation.spec);
    out.push_back({i, evaluation.per_patch[i].ssim, difference_map(patches[i].pixels, decoded)});
  }
  return out;
}

}  // namespace slimslide
