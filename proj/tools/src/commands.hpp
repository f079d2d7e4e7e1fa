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

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace slimslide::cli {

/// Process exit codes. Stable across releases.
enum ExitCode : int {
  kExitOk = 0,
  kExitRuntime = 1,       // unexpected failure
  kExitUsage = 2,         // bad flags, config or parameter values
  kExitIo = 3,            // unreadable or unwritable files, malformed TIFF
  kExitCodecMissing = 4,  // codec not compiled into this build
  kExitData = 5,          // inputs inconsistent with the request
};

enum class ReportFormat { kJson, kCsv };

struct GlobalOptions {
  unsigned threads = 0;
  ReportFormat report = ReportFormat::kJson;
  std::optional<std::filesystem::path> report_file;  // stdout when unset
  bool quiet = false;
  nlohmann::json config = nlohmann::json::object();
};

struct SynthArgs {
  std::optional<std::filesystem::path> spec_file;
  std::filesystem::path out_dir;
  nlohmann::json overrides = nlohmann::json::object();
};

struct SegmentArgs {
  std::filesystem::path input;
  std::filesystem::path output;
  double threshold = 85.0;
  int radius = 9;
  std::optional<double> magnification;  // lowest-resolution level when unset
  std::optional<std::filesystem::path> ground_truth;
};

struct ConvertArgs {
  std::filesystem::path input;
  std::filesystem::path output;
  std::string policy = "keep";
  std::string codec = "jpeg:90";
  std::optional<std::filesystem::path> mask;
  double mask_magnification = 2.5;
  double threshold = 85.0;
  int radius = 9;
  std::optional<std::filesystem::path> baseline;
  bool no_baseline = false;
};

struct PatchArgs {
  std::filesystem::path input;
  std::filesystem::path output;
  int patch_px = 256;
  double overlap = 0.0;
  std::string policy = "keep";
  std::optional<std::filesystem::path> mask;
  bool no_mask = false;  // skip segmentation; every patch counts as tissue
  double mask_magnification = 2.5;
  double threshold = 85.0;
  int radius = 9;
  std::optional<std::string> encode;
  std::string pad_color = "FFFFFF";
  std::uint64_t seed = 0;
};

struct BenchArgs {
  std::filesystem::path input;
  std::string codecs = "jpeg:90,png,jpegxl:1,jpeg2000:37,mock:7";
  std::string baseline = "jpeg:90";
  double min_tissue = 0.5;
  std::size_t balanced = 0;  // 0 keeps every patch
  std::uint64_t seed = 0;
  std::size_t worst = 5;
  std::optional<std::filesystem::path> worst_dir;
};

struct RdArgs {
  std::filesystem::path input;
  std::string family = "jpeg";
  std::string qualities = "70,80,90";
  double min_tissue = 0.5;
  std::size_t balanced = 0;
  std::uint64_t seed = 0;
};

int cmd_synth(const GlobalOptions& g, const SynthArgs& a);
int cmd_segment(const GlobalOptions& g, const SegmentArgs& a);
int cmd_convert(const GlobalOptions& g, const ConvertArgs& a);
int cmd_patch(const GlobalOptions& g, const PatchArgs& a);
int cmd_bench(const GlobalOptions& g, const BenchArgs& a);
int cmd_rd(const GlobalOptions& g, const RdArgs& a);

/// Writes the report to the report file or stdout.
void emit_report(const GlobalOptions& g, const std::string& text);
/// One-row CSV from a flat JSON object; nested values are serialized JSON.
std::string flat_csv(const nlohmann::json& object);
/// Human progress lines go to stderr.
void note(const GlobalOptions& g, const std::string& line);

std::vector<std::string> split_list(const std::string& text);

}  // namespace slimslide::cli
