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

#include <gtest/gtest.h>

#include <filesystem>
#include <memory>
#include <string>

#include "json.hpp"
#include "oracles.hpp"
#include "report_schema.hpp"
#include "slimslide/io.hpp"
#include "slimslide/pyramid.hpp"

namespace slimslide {
namespace {

using nlohmann::json;
using testing::CommandResult;
using testing::TempDir;

std::string quote(const std::filesystem::path& p) { return "'" + p.string() + "'"; }

CommandResult cli(const std::string& args) { return testing::run_command(std::string(SLIMSLIDE_CLI_PATH) + " " + args); }

void expect_clean(const std::vector<std::string>& problems) {
  for (const auto& p : problems) ADD_FAILURE() << p;
}

/// One small synthetic slide shared by every test in the suite.
class CliTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = std::make_unique<TempDir>();
    const auto r = cli("-q synth -o " + quote(dir_->path() / "slide") +
                       " --seed 5 --width 1024 --height 1024 --levels 3 --glass-frac 0.5");
    ASSERT_EQ(r.exit_code, 0) << r.err;
    synth_report_ = r.out;
  }
  static void TearDownTestSuite() { dir_.reset(); }

  static std::filesystem::path slide() { return dir_->path() / "slide" / "slide.tiff"; }
  static std::filesystem::path truth() { return dir_->path() / "slide" / "ground_truth.png"; }
  static std::filesystem::path work(const std::string& name) { return dir_->path() / name; }

  static std::unique_ptr<TempDir> dir_;
  static std::string synth_report_;
};

std::unique_ptr<TempDir> CliTest::dir_;
std::string CliTest::synth_report_;

TEST_F(CliTest, SynthWritesSlideMaskAndSpec) {
  expect_clean(testing::check_json_report(synth_report_, "synth"));
  EXPECT_TRUE(std::filesystem::exists(slide()));
  EXPECT_TRUE(std::filesystem::exists(truth()));
  EXPECT_TRUE(std::filesystem::exists(dir_->path() / "slide" / "spec.json"));
  const auto spec = json::parse(testing::run_command("cat " + quote(dir_->path() / "slide" / "spec.json")).out);
  EXPECT_EQ(spec["seed"], 5);
  EXPECT_EQ(open_pyramid(slide()).level_count(), 3);
}

TEST_F(CliTest, SynthIsDeterministic) {
  const auto r = cli("-q synth -o " + quote(work("again")) + " --seed 5 --width 1024 --height 1024 --levels 3 --glass-frac 0.5");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_EQ(read_file_bytes(work("again") / "slide.tiff"), read_file_bytes(slide()));
}

TEST_F(CliTest, SegmentReportsDiceAgainstGroundTruth) {
  const auto r = cli("-q segment -i " + quote(slide()) + " -o " + quote(work("mask.png")) + " --ground-truth " +
                     quote(truth()));
  ASSERT_EQ(r.exit_code, 0) << r.err;
  expect_clean(testing::check_json_report(r.out, "segment"));
  const auto j = json::parse(r.out);
  EXPECT_GE(j["dice"].get<double>(), 0.99);
  EXPECT_TRUE(std::filesystem::exists(work("mask.png")));
}

TEST_F(CliTest, SegmentAllGlassFixture) {
  const auto s = cli("-q synth -o " + quote(work("glass")) + " --width 512 --height 512 --levels 2 --glass-frac 1 --blobs 0");
  ASSERT_EQ(s.exit_code, 0) << s.err;
  const auto r = cli("-q segment -i " + quote(work("glass") / "slide.tiff") + " -o " + quote(work("glass_mask.png")));
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out)["tissue_fraction"].get<double>(), 0.0);
}

TEST_F(CliTest, ConvertPoliciesAndBaseline) {
  std::uint64_t sizes[3] = {};
  const char* policies[3] = {"keep", "white", "empty"};
  for (int i = 0; i < 3; ++i) {
    const auto out = work(std::string("conv_") + policies[i] + ".tiff");
    const auto r = cli("-q convert -i " + quote(slide()) + " -o " + quote(out) + " --policy " + policies[i] +
                       " --baseline " + quote(work("conv_base.tiff")));
    ASSERT_EQ(r.exit_code, 0) << r.err;
    expect_clean(testing::check_json_report(r.out, "convert"));
    const auto j = json::parse(r.out);
    sizes[i] = j["size_bytes"].get<std::uint64_t>();
    EXPECT_EQ(sizes[i], file_size_bytes(out));
    double named = 0;
    for (const char* k : {"Read tiles (I/O)", "Decompress tiles", "Segmentation", "Compress", "Write (I/O)"}) {
      named += j["runtime_s"][k].get<double>();
    }
    EXPECT_LE(named, j["runtime_s"]["Total"].get<double>());
    EXPECT_GE(j["runtime_s"]["Other"].get<double>(), 0.0);
    if (i == 0) {
      EXPECT_LT(std::abs(j["size_reduction_pct"].get<double>()), 1.0);
    }
    if (i == 2) {
      EXPECT_GT(j["size_reduction_pct"].get<double>(), 0.0);
    }
  }
  EXPECT_LT(sizes[2], sizes[1]);
  EXPECT_LE(sizes[1], sizes[0]);
  EXPECT_TRUE(std::filesystem::exists(work("conv_base.tiff")));
}

TEST_F(CliTest, ConvertCsvReport) {
  const auto r = cli("-q --report csv convert -i " + quote(slide()) + " -o " + quote(work("csv.tiff")) +
                     " --policy empty --no-baseline");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const std::string header = r.out.substr(0, r.out.find('\n'));
  EXPECT_NE(header.find("Read tiles (I/O)"), std::string::npos);
  EXPECT_NE(header.find("Write (I/O)"), std::string::npos);
}

TEST_F(CliTest, ConvertBadPathIsIoError) {
  const auto r = cli("-q convert -i " + quote(work("missing.tiff")) + " -o " + quote(work("x.tiff")));
  EXPECT_EQ(r.exit_code, 3);
  EXPECT_FALSE(r.err.empty());
}

TEST_F(CliTest, BadPolicyIsUsageError) {
  const auto r = cli("-q convert -i " + quote(slide()) + " -o " + quote(work("x.tiff")) + " --policy erase");
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_EQ(cli("frobnicate").exit_code, 2);
}

TEST_F(CliTest, PatchBenchRdPipeline) {
  const auto pdir = work("patches");
  auto r = cli("-q patch -i " + quote(slide()) + " -o " + quote(pdir) + " --encode mock:6");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  expect_clean(testing::check_json_report(r.out, "patch"));
  EXPECT_TRUE(std::filesystem::exists(pdir / "manifest.json"));

  r = cli("-q bench -i " + quote(pdir) + " --codecs jpeg:90,png,mock:4,mock:8 --worst 2 --worst-dir " +
          quote(work("worst")));
  ASSERT_EQ(r.exit_code, 0) << r.err;
  expect_clean(testing::check_json_report(r.out, "bench"));
  const auto j = json::parse(r.out);
  ASSERT_EQ(j["rows"].size(), 4u);
  EXPECT_EQ(j["rows"][0]["saved_space_pct"]["mean"].get<double>(), 0.0);
  EXPECT_EQ(j["rows"][1]["ssim"]["mean"].get<double>(), 1.0);
  EXPECT_EQ(j["rows"][1]["psnr_db"]["mean"], "inf");
  EXPECT_LE(j["rows"][2]["ssim"]["mean"].get<double>(), j["rows"][3]["ssim"]["mean"].get<double>());
  EXPECT_TRUE(std::filesystem::exists(work("worst") / "jpeg_90" / "worst_cases.json") ||
              !std::filesystem::is_empty(work("worst")));

  r = cli("-q --report csv rd -i " + quote(pdir) + " --family jpeg --qualities 70,80,90");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  expect_clean(testing::check_rd_csv(r.out));
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 4);

  r = cli("-q rd -i " + quote(pdir) + " --family jpeg --qualities 70,80,90");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  expect_clean(testing::check_json_report(r.out, "rd"));
  const auto pts = json::parse(r.out)["points"];
  ASSERT_EQ(pts.size(), 3u);
  EXPECT_LT(pts[0]["bpp"].get<double>(), pts[1]["bpp"].get<double>());
  EXPECT_LT(pts[1]["bpp"].get<double>(), pts[2]["bpp"].get<double>());
}

TEST_F(CliTest, RdEmptyQualityListGivesHeaderOnly) {
  const auto r = cli("-q --report csv rd -i " + quote(work("nowhere")) + " --family jpeg --qualities ''");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_EQ(r.out, "codec,quality,bpp,ssim,psnr,n\n");
}

TEST_F(CliTest, RdUnavailableCodecHasDistinctExitCode) {
  const auto r = cli("-q rd -i " + quote(work("nowhere")) + " --family jpegxl --qualities 1");
  EXPECT_EQ(r.exit_code, 4);
  EXPECT_NE(r.err.find("jpegxl"), std::string::npos) << r.err;
}

TEST_F(CliTest, ConfigFileAndFlagPrecedence) {
  const auto cfg = work("cfg.json");
  write_text_file(cfg, "{\"report\": \"csv\", \"convert\": {\"policy\": \"empty\", \"no_baseline\": true}}");
  auto r = cli("-q --config " + quote(cfg) + " convert -i " + quote(slide()) + " -o " + quote(work("cfg.tiff")));
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("policy,", 0), 0u) << r.out;
  EXPECT_NE(r.out.find("empty:FFFFFF"), std::string::npos);
  r = cli("-q --config " + quote(cfg) + " --report json convert -i " + quote(slide()) + " -o " +
          quote(work("cfg2.tiff")) + " --policy keep");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["policy"], "keep");
  EXPECT_TRUE(j["baseline"].is_null());
}

TEST_F(CliTest, ReportFileAndThreadsEnv) {
  const auto r = testing::run_command("SLIMSLIDE_THREADS=2 " + std::string(SLIMSLIDE_CLI_PATH) +
                                      " -q --report-file " + quote(work("seg.json")) + " segment -i " +
                                      quote(slide()) + " -o " + quote(work("m2.png")));
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  const Bytes raw = read_file_bytes(work("seg.json"));
  expect_clean(testing::check_json_report(std::string(raw.begin(), raw.end()), "segment"));
}

}  // namespace
}  // namespace slimslide
