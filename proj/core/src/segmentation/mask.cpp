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
#include <charconv>
#include <numeric>
#include <string>

#include "slimslide/error.hpp"
#include "slimslide/png_io.hpp"
#include "slimslide/segmentation.hpp"

namespace slimslide {

namespace {
constexpr const char* kMagnificationKey = "magnification";
}  // namespace

BinaryMask::BinaryMask(int width, int height, double magnification, bool fill)
    : width_(width), height_(height), magnification_(magnification) {
  if (width < 1 || height < 1) {
    fail(ErrorCode::kInvalidDimensions, "mask must be at least 1x1, got " + std::to_string(width) + "x" +
                                            std::to_string(height));
  }
  bits_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill ? 1 : 0);
}

std::size_t BinaryMask::tissue_count() const noexcept {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

double BinaryMask::tissue_fraction() const noexcept {
  if (bits_.empty()) return 0.0;
  return static_cast<double>(tissue_count()) / static_cast<double>(bits_.size());
}

std::size_t BinaryMask::tissue_count_in(int x, int y, int w, int h) const noexcept {
  const int x0 = std::max(x, 0);
  const int y0 = std::max(y, 0);
  const int x1 = std::min(x + w, width_);
  const int y1 = std::min(y + h, height_);
  std::size_t n = 0;
  for (int yy = y0; yy < y1; ++yy) {
    const auto* row = &bits_[index(0, yy)];
    n += static_cast<std::size_t>(std::count(row + x0, row + x1, std::uint8_t{1}));
  }
  return n;
}

void save_mask(const BinaryMask& m, const std::filesystem::path& path) {
  if (m.width() < 1 || m.height() < 1) fail(ErrorCode::kInvalidDimensions, "cannot save an empty mask");
  png::GrayImage img;
  img.width = m.width();
  img.height = m.height();
  img.bit_depth = 8;
  img.samples.resize(m.bits().size());
  std::transform(m.bits().begin(), m.bits().end(), img.samples.begin(),
                 [](std::uint8_t b) { return static_cast<std::uint16_t>(b ? 255 : 0); });
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), m.magnification());
  img.text.emplace_back(kMagnificationKey, std::string(buf, res.ptr));
  write_file_bytes(path, png::encode_gray(img));
}

BinaryMask load_mask(const std::filesystem::path& path, std::optional<double> fallback_magnification) {
  const Bytes bytes = read_file_bytes(path);
  const png::GrayImage img = png::decode_gray(bytes);
  if (img.width < 1 || img.height < 1) fail(ErrorCode::kInvalidDimensions, path.string() + ": empty mask");
  double magnification = 0.0;
  if (const auto text = img.find_text(kMagnificationKey)) {
    const auto res = std::from_chars(text->data(), text->data() + text->size(), magnification);
    if (res.ec != std::errc{} || !(magnification > 0)) {
      fail(ErrorCode::kDimensionMismatch, path.string() + ": bad magnification '" + *text + "'");
    }
  } else if (fallback_magnification) {
    magnification = *fallback_magnification;
  } else {
    fail(ErrorCode::kInvalidArgument, path.string() + ": mask has no magnification metadata");
  }
  BinaryMask m(img.width, img.height, magnification);
  std::transform(img.samples.begin(), img.samples.end(), m.bits().begin(),
                 [](std::uint16_t v) { return static_cast<std::uint8_t>(v != 0 ? 1 : 0); });
  return m;
}

BinaryMask rescale_mask(const BinaryMask& m, int target_w, int target_h) {
  if (target_w < 1 || target_h < 1) fail(ErrorCode::kInvalidDimensions, "rescale target must be at least 1x1");
  if (target_w == m.width() && target_h == m.height()) return m;
  BinaryMask out(target_w, target_h, m.magnification() * target_w / m.width());
  std::vector<int> src_x(static_cast<std::size_t>(target_w));
  for (int x = 0; x < target_w; ++x) {
    // Nearest source pixel centre: floor((x + 0.5) * sw / tw).
    src_x[static_cast<std::size_t>(x)] = static_cast<int>(
        (static_cast<std::int64_t>(2 * x + 1) * m.width()) / (2 * static_cast<std::int64_t>(target_w)));
  }
  for (int y = 0; y < target_h; ++y) {
    const int sy = static_cast<int>((static_cast<std::int64_t>(2 * y + 1) * m.height()) /
                                    (2 * static_cast<std::int64_t>(target_h)));
    for (int x = 0; x < target_w; ++x) out.set(x, y, m.at(src_x[static_cast<std::size_t>(x)], sy));
  }
  return out;
}

double dice(const BinaryMask& a, const BinaryMask& b) {
  if (a.width() != b.width() || a.height() != b.height()) {
    fail(ErrorCode::kDimensionMismatch, "dice needs equal sizes, got " + std::to_string(a.width()) + "x" +
                                            std::to_string(a.height()) + " and " + std::to_string(b.width()) + "x" +
                                            std::to_string(b.height()));
  }
  std::size_t inter = 0;
  std::size_t total = 0;
  const auto ab = a.bits();
  const auto bb = b.bits();
  for (std::size_t i = 0; i < ab.size(); ++i) {
    inter += static_cast<std::size_t>(ab[i] & bb[i]);
    total += static_cast<std::size_t>(ab[i]) + bb[i];
  }
  if (total == 0) return 1.0;
  return 2.0 * static_cast<double>(inter) / static_cast<double>(total);
}

}  // namespace slimslide
