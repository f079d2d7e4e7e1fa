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

// JPEG-2000 through OpenCV's imgcodecs (OpenJPEG backend). imgcodecs only
// exposes a compression-ratio knob, so a target PSNR is met by bisecting that
// knob for the smallest stream whose reconstruction reaches the target.

#include <string>

#include "codecs/backends.hpp"
#include "slimslide/error.hpp"

#ifdef SLIMSLIDE_HAVE_JPEG2000
#include <cmath>
#include <cstring>
#include <limits>
#include <vector>

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>
#endif

namespace slimslide::detail {

#ifdef SLIMSLIDE_HAVE_JPEG2000
namespace {

cv::Mat to_bgr(const RgbImage& img) {
  cv::Mat mat(img.height(), img.width(), CV_8UC3);
  for (int y = 0; y < img.height(); ++y) {
    const std::uint8_t* src = img.row(y);
    auto* dst = mat.ptr<std::uint8_t>(y);
    for (int x = 0; x < img.width(); ++x) {
      dst[3 * x] = src[3 * x + 2];
      dst[3 * x + 1] = src[3 * x + 1];
      dst[3 * x + 2] = src[3 * x];
    }
  }
  return mat;
}

double psnr_bgr(const cv::Mat& a, const cv::Mat& b) {
  double sse = 0.0;
  for (int y = 0; y < a.rows; ++y) {
    const auto* pa = a.ptr<std::uint8_t>(y);
    const auto* pb = b.ptr<std::uint8_t>(y);
    for (int i = 0; i < a.cols * 3; ++i) {
      const double d = static_cast<double>(pa[i]) - static_cast<double>(pb[i]);
      sse += d * d;
    }
  }
  if (sse == 0.0) return std::numeric_limits<double>::infinity();
  const double mse = sse / (static_cast<double>(a.rows) * a.cols * 3);
  return 10.0 * std::log10(255.0 * 255.0 / mse);
}

std::vector<std::uint8_t> encode_at(const cv::Mat& bgr, int rate_x1000) {
  std::vector<std::uint8_t> buf;
  if (!cv::imencode(".jp2", bgr, buf, {cv::IMWRITE_JPEG2000_COMPRESSION_X1000, rate_x1000})) {
    fail(ErrorCode::kEncodeFailure, "OpenCV failed to encode JPEG-2000");
  }
  return buf;
}

}  // namespace

bool jpeg2000_available() { return true; }

Bytes jpeg2000_encode(const RgbImage& img, double target_psnr_db) {
  const cv::Mat bgr = to_bgr(img);
  auto meets = [&](const std::vector<std::uint8_t>& buf) {
    const cv::Mat back = cv::imdecode(buf, cv::IMREAD_COLOR);
    return !back.empty() && psnr_bgr(bgr, back) >= target_psnr_db;
  };
  int lo = 1;
  int hi = 1000;
  std::vector<std::uint8_t> best = encode_at(bgr, hi);
  if (!meets(best)) return best;
  // Invariant: `hi` meets the target and `best` holds its stream.
  while (lo < hi) {
    const int mid = lo + (hi - lo) / 2;
    std::vector<std::uint8_t> buf = encode_at(bgr, mid);
    if (meets(buf)) {
      hi = mid;
      best = std::move(buf);
    } else {
      lo = mid + 1;
    }
  }
  return best;
}

RgbImage jpeg2000_decode(std::span<const std::uint8_t> data) {
  if (data.size() < 12) fail(ErrorCode::kDecodeFailure, "JPEG-2000 stream too short");
  const std::vector<std::uint8_t> buf(data.begin(), data.end());
  cv::Mat bgr;
  try {
    bgr = cv::imdecode(buf, cv::IMREAD_COLOR);
  } catch (const cv::Exception& e) {
    fail(ErrorCode::kDecodeFailure, std::string("OpenCV: ") + e.what());
  }
  if (bgr.empty()) fail(ErrorCode::kDecodeFailure, "corrupt JPEG-2000 stream");
  RgbImage img(bgr.cols, bgr.rows);
  for (int y = 0; y < bgr.rows; ++y) {
    const auto* src = bgr.ptr<std::uint8_t>(y);
    std::uint8_t* dst = img.row(y);
    for (int x = 0; x < bgr.cols; ++x) {
      dst[3 * x] = src[3 * x + 2];
      dst[3 * x + 1] = src[3 * x + 1];
      dst[3 * x + 2] = src[3 * x];
    }
  }
  return img;
}

#else

bool jpeg2000_available() { return false; }

Bytes jpeg2000_encode(const RgbImage&, double) {
  fail(ErrorCode::kCodecUnavailable, "JPEG-2000 support is not built in");
}

RgbImage jpeg2000_decode(std::span<const std::uint8_t>) {
  fail(ErrorCode::kCodecUnavailable, "JPEG-2000 support is not built in");
}

#endif

}  // namespace slimslide::detail
