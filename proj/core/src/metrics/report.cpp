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
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>

#include "json_support.hpp"
#include "slimslide/metrics.hpp"

namespace slimslide {
namespace {

nlohmann::json stats_json(const AggregateStats& s) {
  return {{"mean", detail::finite_or_inf(s.mean)},
          {"std", detail::finite_or_inf(s.std)},
          {"min", detail::finite_or_inf(s.min)},
          {"max", detail::finite_or_inf(s.max)},
          {"n", s.n}};
}

std::string num(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

}  // namespace

std::string evaluation_to_json(const std::vector<SpecEvaluation>& rows, const CodecSpec& baseline) {
  nlohmann::json j;
  j["report"] = "patch-quality";
  j["baseline"] = detail::codec_to_json(baseline);
  j["decode_warmup"] = kDecodeWarmup;
  auto& out = j["rows"] = nlohmann::json::array();
  for (const SpecEvaluation& r : rows) {
    nlohmann::json row{{"codec", detail::codec_to_json(r.spec)}, {"skipped", r.skipped}};
    if (r.skipped) {
      row["skip_reason"] = r.skip_reason;
      out.push_back(std::move(row));
      continue;
    }
    row["n"] = r.per_patch.size();
    row["ssim"] = stats_json(r.ssim);
    row["psnr_db"] = stats_json(r.psnr_db);
    row["bpp"] = stats_json(r.bpp);
    row["saved_space_pct"] = stats_json(r.saved_space_pct);
    row["total_bytes"] = r.total_bytes;
    row["total_kb"] = static_cast<double>(r.total_bytes) / 1024.0;
    row["total_baseline_bytes"] = r.total_baseline_bytes;
    row["total_saved_pct"] = detail::finite_or_inf(r.total_saved_pct);
    row["mean_dec_time_s"] = r.mean_dec_time_s;
    row["timed_decodes"] = r.timed_decodes;
    out.push_back(std::move(row));
  }
  return j.dump(2) + "\n";
}

std::string evaluation_to_csv(const std::vector<SpecEvaluation>& rows) {
  std::ostringstream os;
  os << "codec,n,ssim_mean,ssim_min,ssim_max,psnr_mean,psnr_min,psnr_max,bpp_mean,total_kb,"
        "saved_space_pct,saved_space_min,saved_space_max,total_saved_pct,dec_time_ms,skipped\n";
  for (const SpecEvaluation& r : rows) {
    os << r.spec.label() << ',';
    if (r.skipped) {
      os << "0,,,,,,,,,,,,,,1\n";
      continue;
    }
    os << r.per_patch.size() << ',' << num(r.ssim.mean) << ',' << num(r.ssim.min) << ',' << num(r.ssim.max) << ','
       << num(r.psnr_db.mean) << ',' << num(r.psnr_db.min) << ',' << num(r.psnr_db.max) << ',' << num(r.bpp.mean)
       << ',' << num(static_cast<double>(r.total_bytes) / 1024.0) << ',' << num(r.saved_space_pct.mean) << ','
       << num(r.saved_space_pct.min) << ',' << num(r.saved_space_pct.max) << ',' << num(r.total_saved_pct) << ','
       << num(r.mean_dec_time_s * 1000.0) << ",0\n";
  }
  return os.str();
}

std::string rd_to_csv(const std::vector<RDPoint>& points) {
  std::ostringstream os;
  os << "codec,quality,bpp,ssim,psnr,n\n";
  for (const RDPoint& p : points) {
    os << p.codec_label << ',' << num(p.quality_param) << ',' << num(p.mean_bpp) << ',' << num(p.mean_ssim) << ','
       << num(p.mean_psnr) << ',' << p.n << '\n';
  }
  return os.str();
}

std::string rd_to_json(const std::vector<RDPoint>& points) {
  nlohmann::json j;
  j["report"] = "rate-distortion";
  auto& out = j["points"] = nlohmann::json::array();
  for (const RDPoint& p : points) {
    out.push_back({{"codec", p.codec_label},
                   {"quality", p.quality_param},
                   {"bpp", p.mean_bpp},
                   {"ssim", p.mean_ssim},
                   {"psnr", detail::finite_or_inf(p.mean_psnr)},
                   {"n", p.n}});
  }
  return j.dump(2) + "\n";
}

std::string worst_cases_to_json(const std::vector<WorstCase>& cases, const std::vector<PatchRecord>& patches,
                                const std::vector<std::string>& diff_files) {
  nlohmann::json out = nlohmann::json::array();
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const WorstCase& c = cases[i];
    const PatchRecord& p = patches.at(c.patch_index);
    double lo = 0.0, hi = 0.0;
    if (!c.diff.values.empty()) {
      const auto [mn, mx] = std::minmax_element(c.diff.values.begin(), c.diff.values.end());
      lo = *mn;
      hi = *mx;
    }
    nlohmann::json e{{"rank", i},           {"patch_index", c.patch_index}, {"level", p.source_level},
                     {"x", p.origin_x},     {"y", p.origin_y},             {"ssim", c.ssim},
                     {"diff_min", lo},      {"diff_max", hi}};
    if (i < diff_files.size()) e["diff_file"] = diff_files[i];
    out.push_back(std::move(e));
  }
  return out.dump(2) + "\n";
}

}  // namespace slimslide
