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

// Separable-Gaussian SSIM. Each channel is filtered in two 1-D passes over
// the five moment planes (x, y, x^2, y^2, xy), keeping only window positions
// that fit entirely inside the image.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "slimslide/error.hpp"
#include "slimslide/metrics.hpp"
#include "slimslide/png_io.hpp"

namespace slimslide {
namespace {

void check_same_size(const RgbImage& a, const RgbImage& b, const char* what) {
  if (a.width() != b.width() || a.height() != b.height()) {
    fail(ErrorCode::kDimensionMismatch, std::string(what) + " needs equal sizes, got " + std::to_string(a.width()) +
                                            "x" + std::to_string(a.height()) + " and " + std::to_string(b.width()) +
                                            "x" + std::to_string(b.height()));
  }
}

std::vector<double> gaussian_kernel(int size, double sigma) {
  std::vector<double> k(static_cast<std::size_t>(size));
  const double c = (size - 1) / 2.0;
  double sum = 0.0;
  for (int i = 0; i < size; ++i) {
    const double d = i - c;
    k[static_cast<std::size_t>(i)] = std::exp(-(d * d) / (2.0 * sigma * sigma));
    sum += k[static_cast<std::size_t>(i)];
  }
  for (double& v : k) v /= sum;
  return k;
}

/// Valid-mode separable filtering of a w x h plane; output (w-n+1) x (h-n+1).
std::vector<double> filter_valid(const std::vector<double>& plane, int w, int h, const std::vector<double>& k) {
  const int n = static_cast<int>(k.size());
  const int ow = w - n + 1;
  const int oh = h - n + 1;
  std::vector<double> horiz(static_cast<std::size_t>(ow) * static_cast<std::size_t>(h));
  for (int y = 0; y < h; ++y) {
    const double* src = &plane[static_cast<std::size_t>(y) * static_cast<std::size_t>(w)];
    double* dst = &horiz[static_cast<std::size_t>(y) * static_cast<std::size_t>(ow)];
    for (int x = 0; x < ow; ++x) {
      double acc = 0.0;
      for (int i = 0; i < n; ++i) acc += k[static_cast<std::size_t>(i)] * src[x + i];
      dst[x] = acc;
    }
  }
  std::vector<double> out(static_cast<std::size_t>(ow) * static_cast<std::size_t>(oh));
  for (int y = 0; y < oh; ++y) {
    double* dst = &out[static_cast<std::size_t>(y) * static_cast<std::size_t>(ow)];
    for (int x = 0; x < ow; ++x) {
      double acc = 0.0;
      for (int i = 0; i < n; ++i) {
        acc += k[static_cast<std::size_t>(i)] * horiz[static_cast<std::size_t>(y + i) * static_cast<std::size_t>(ow) +
                                                      static_cast<std::size_t>(x)];
      }
      dst[x] = acc;
    }
  }
  return out;
}

double channel_ssim(const RgbImage& a, const RgbImage& b, int ch, const std::vector<double>& k,
                    const SsimParams& params) {
  const int w = a.width();
  const int h = a.height();
  const std::size_t n = a.pixel_count();
  std::vector<double> x(n), y(n), xx(n), yy(n), xy(n);
  const auto ab = a.bytes();
  const auto bb = b.bytes();
  for (std::size_t i = 0; i < n; ++i) {
    const double va = ab[3 * i + static_cast<std::size_t>(ch)];
    const double vb = bb[3 * i + static_cast<std::size_t>(ch)];
    x[i] = va;
    y[i] = vb;
    xx[i] = va * va;
    yy[i] = vb * vb;
    xy[i] = va * vb;
  }
  const auto mx = filter_valid(x, w, h, k);
  const auto my = filter_valid(y, w, h, k);
  const auto mxx = filter_valid(xx, w, h, k);
  const auto myy = filter_valid(yy, w, h, k);
  const auto mxy = filter_valid(xy, w, h, k);
  const double c1 = (params.k1 * params.dynamic_range) * (params.k1 * params.dynamic_range);
  const double c2 = (params.k2 * params.dynamic_range) * (params.k2 * params.dynamic_range);
  double sum = 0.0;
  for (std::size_t i = 0; i < mx.size(); ++i) {
    const double vx = mxx[i] - mx[i] * mx[i];
    const double vy = myy[i] - my[i] * my[i];
    const double cov = mxy[i] - mx[i] * my[i];
    sum += ((2 * mx[i] * my[i] + c1) * (2 * cov + c2)) /
           ((mx[i] * mx[i] + my[i] * my[i] + c1) * (vx + vy + c2));
  }
  return sum / static_cast<double>(mx.size());
}

}  // namespace

double psnr(const RgbImage& a, const RgbImage& b) {
  check_same_size(a, b, "psnr");
  if (a.empty()) fail(ErrorCode::kInvalidDimensions, "psnr of empty images");
  const auto ab = a.bytes();
  const auto bb = b.bytes();
  std::uint64_t sq = 0;
  for (std::size_t i = 0; i < ab.size(); ++i) {
    const int d = static_cast<int>(ab[i]) - static_cast<int>(bb[i]);
    sq += static_cast<std::uint64_t>(d * d);
  }
  if (sq == 0) return std::numeric_limits<double>::infinity();
  const double mse = static_cast<double>(sq) / static_cast<double>(ab.size());
  return 10.0 * std::log10(255.0 * 255.0 / mse);
}

double ssim(const RgbImage& a, const RgbImage& b, const SsimParams& params) {
  check_same_size(a, b, "ssim");
  if (params.window < 1 || !(params.sigma > 0)) fail(ErrorCode::kInvalidArgument, "bad SSIM window parameters");
  if (a.width() < params.window || a.height() < params.window) {
    fail(ErrorCode::kInvalidDimensions, "ssim needs images of at least " + std::to_string(params.window) + " px per side");
  }
  const auto k = gaussian_kernel(params.window, params.sigma);
  double total = 0.0;
  for (int ch = 0; ch < 3; ++ch) total += channel_ssim(a, b, ch, k, params);
  return total / 3.0;
}

double bpp(std::uint64_t total_bytes, int width, int height) {
  if (width < 1 || height < 1) fail(ErrorCode::kInvalidDimensions, "bpp needs a positive pixel count");
  return static_cast<double>(total_bytes) * 8.0 / (static_cast<double>(width) * static_cast<double>(height));
}

double saved_space_pct(const SavedSpaceEntry& entry) {
  if (entry.jpeg_bytes == 0) fail(ErrorCode::kInvalidArgument, "saved space needs a non-zero JPEG size");
  return (1.0 - static_cast<double>(entry.compressed_bytes) / static_cast<double>(entry.jpeg_bytes)) * 100.0;
}

double saved_space(std::span<const SavedSpaceEntry> entries) {
  if (entries.empty()) fail(ErrorCode::kEmptyInput, "saved space of an empty patch list");
  double sum = 0.0;
  for (const auto& e : entries) sum += saved_space_pct(e);
  return sum / static_cast<double>(entries.size());
}

AggregateStats aggregate(std::span<const double> values) {
  if (values.empty()) fail(ErrorCode::kEmptyInput, "aggregate of an empty list");
  AggregateStats s;
  s.n = values.size();
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  s.min = *lo;
  s.max = *hi;
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(s.n);
  if (std::isinf(s.mean)) {
    s.std = std::all_of(values.begin(), values.end(), [&](double v) { return v == s.mean; }) ? 0.0 : NAN;
    return s;
  }
  double sq = 0.0;
  for (double v : values) sq += (v - s.mean) * (v - s.mean);
  s.std = std::sqrt(sq / static_cast<double>(s.n));
  // Rounding in the mean must not break min <= mean <= max.
  s.mean = std::clamp(s.mean, s.min, s.max);
  return s;
}

DifferenceMap difference_map(const RgbImage& original, const RgbImage& decoded) {
  check_same_size(original, decoded, "difference_map");
  DifferenceMap m{original.width(), original.height(), std::vector<double>(original.pixel_count())};
  const auto o = original.bytes();
  const auto d = decoded.bytes();
  for (std::size_t i = 0; i < m.values.size(); ++i) {
    const int so = o[3 * i] + o[3 * i + 1] + o[3 * i + 2];
    const int sd = d[3 * i] + d[3 * i + 1] + d[3 * i + 2];
    m.values[i] = static_cast<double>(sd - so) / 3.0;
  }
  return m;
}

void save_difference_map(const DifferenceMap& map, const std::filesystem::path& path) {
  png::GrayImage img;
  img.width = map.width;
  img.height = map.height;
  img.bit_depth = 16;
  img.samples.resize(map.values.size());
  for (std::size_t i = 0; i < map.values.size(); ++i) {
    img.samples[i] = static_cast<std::uint16_t>(std::lround(map.values[i] * 3.0) + 32768);
  }
  img.text = {{"scale", "0.333333333333"}, {"offset", "32768"}, {"quantity", "grey(decoded) - grey(original)"}};
  write_file_bytes(path, png::encode_gray(img));
}

DifferenceMap load_difference_map(const std::filesystem::path& path) {
  const png::GrayImage img = png::decode_gray(read_file_bytes(path));
  if (img.bit_depth != 16) fail(ErrorCode::kDimensionMismatch, path.string() + ": difference maps are 16-bit");
  DifferenceMap m{img.width, img.height, std::vector<double>(img.samples.size())};
  for (std::size_t i = 0; i < m.values.size(); ++i) {
    m.values[i] = (static_cast<double>(img.samples[i]) - 32768.0) / 3.0;
  }
  return m;
}

std::string format_size(std::uint64_t bytes) {
  static constexpr const char* kUnits[] = {"B", "kB", "MB", "GB", "TB"};
  if (bytes < 1024) return std::to_string(bytes) + " B";
  double v = static_cast<double>(bytes);
  std::size_t u = 0;
  while (v >= 1024.0 && u + 1 < std::size(kUnits)) {
    v /= 1024.0;
    ++u;
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f %s", v, kUnits[u]);
  return buf;
}

}  // namespace slimslide
