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

#include "slimslide/image.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>

#include "slimslide/error.hpp"

namespace slimslide {

std::string to_hex(Rgb color) {
  char buf[8];
  std::snprintf(buf, sizeof(buf), "%02X%02X%02X", color.r, color.g, color.b);
  return buf;
}

Rgb rgb_from_hex(std::string_view hex) {
  if (hex.size() != 6) fail(ErrorCode::kInvalidArgument, "expected RRGGBB, got '" + std::string(hex) + "'");
  std::uint8_t ch[3];
  for (int i = 0; i < 3; ++i) {
    const char* first = hex.data() + 2 * i;
    auto [ptr, ec] = std::from_chars(first, first + 2, ch[i], 16);
    if (ec != std::errc{} || ptr != first + 2) {
      fail(ErrorCode::kInvalidArgument, "expected RRGGBB, got '" + std::string(hex) + "'");
    }
  }
  return {ch[0], ch[1], ch[2]};
}

RgbImage::RgbImage(int width, int height, Rgb fill_color) : width_(width), height_(height) {
  if (width < 0 || height < 0) fail(ErrorCode::kInvalidDimensions, "negative image size");
  data_.resize(pixel_count() * 3);
  fill(fill_color);
}

void RgbImage::fill(Rgb c) noexcept {
  for (std::size_t i = 0; i < data_.size(); i += 3) {
    data_[i] = c.r;
    data_[i + 1] = c.g;
    data_[i + 2] = c.b;
  }
}

RgbImage RgbImage::crop(int x, int y, int w, int h, Rgb pad) const {
  RgbImage out(w, h, pad);
  const int x0 = std::max(x, 0);
  const int y0 = std::max(y, 0);
  const int x1 = std::min(x + w, width_);
  const int y1 = std::min(y + h, height_);
  if (x0 >= x1 || y0 >= y1) return out;
  const std::size_t run = static_cast<std::size_t>(x1 - x0) * 3;
  for (int yy = y0; yy < y1; ++yy) {
    std::copy_n(&data_[offset(x0, yy)], run, &out.data_[out.offset(x0 - x, yy - y)]);
  }
  return out;
}

void RgbImage::blit(const RgbImage& src, int x, int y) {
  const int x0 = std::max(x, 0);
  const int y0 = std::max(y, 0);
  const int x1 = std::min(x + src.width(), width_);
  const int y1 = std::min(y + src.height(), height_);
  if (x0 >= x1 || y0 >= y1) return;
  const std::size_t run = static_cast<std::size_t>(x1 - x0) * 3;
  for (int yy = y0; yy < y1; ++yy) {
    std::copy_n(&src.data_[src.offset(x0 - x, yy - y)], run, &data_[offset(x0, yy)]);
  }
}

RgbImage downsample_box2(const RgbImage& img) {
  const int w = (img.width() + 1) / 2;
  const int h = (img.height() + 1) / 2;
  RgbImage out(w, h);
  for (int y = 0; y < h; ++y) {
    const int sy1 = std::min(2 * y + 2, img.height());
    for (int x = 0; x < w; ++x) {
      const int sx1 = std::min(2 * x + 2, img.width());
      unsigned sum[3] = {0, 0, 0};
      unsigned n = 0;
      for (int sy = 2 * y; sy < sy1; ++sy) {
        for (int sx = 2 * x; sx < sx1; ++sx) {
          const Rgb c = img.at(sx, sy);
          sum[0] += c.r;
          sum[1] += c.g;
          sum[2] += c.b;
          ++n;
        }
      }
      // Round half up.
      out.set(x, y, {static_cast<std::uint8_t>((sum[0] + n / 2) / n),
                     static_cast<std::uint8_t>((sum[1] + n / 2) / n),
                     static_cast<std::uint8_t>((sum[2] + n / 2) / n)});
    }
  }
  return out;
}

}  // namespace slimslide
