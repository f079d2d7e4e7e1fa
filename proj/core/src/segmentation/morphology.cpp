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

// Binary morphology with a Euclidean disk. The disk is decomposed into one
// horizontal run per row offset, and each run is tested against per-row
// prefix sums, so the cost is O(width * height * (2r + 1)).

#include <algorithm>
#include <vector>

#include "slimslide/error.hpp"
#include "slimslide/segmentation.hpp"

namespace slimslide {
namespace {

struct Grid {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> bits;
};

/// Half-width of the disk run at each vertical offset dy in [-r, r].
std::vector<int> disk_half_widths(int radius) {
  std::vector<int> hw(static_cast<std::size_t>(2 * radius + 1));
  for (int dy = -radius; dy <= radius; ++dy) {
    int w = 0;
    while ((w + 1) * (w + 1) + dy * dy <= radius * radius) ++w;
    hw[static_cast<std::size_t>(dy + radius)] = w;
  }
  return hw;
}

std::vector<int> row_prefix_sums(const Grid& g) {
  const std::size_t stride = static_cast<std::size_t>(g.width) + 1;
  std::vector<int> prefix(stride * static_cast<std::size_t>(g.height), 0);
  for (int y = 0; y < g.height; ++y) {
    int* p = &prefix[stride * static_cast<std::size_t>(y)];
    const std::uint8_t* row = &g.bits[static_cast<std::size_t>(y) * static_cast<std::size_t>(g.width)];
    for (int x = 0; x < g.width; ++x) p[x + 1] = p[x] + row[x];
  }
  return prefix;
}

enum class Op { kDilate, kErode };

/// Out-of-grid pixels are false for both operations.
Grid apply(const Grid& in, int radius, Op op) {
  Grid out{in.width, in.height, std::vector<std::uint8_t>(in.bits.size(), 0)};
  const std::vector<int> hw = disk_half_widths(radius);
  const std::vector<int> prefix = row_prefix_sums(in);
  const std::size_t stride = static_cast<std::size_t>(in.width) + 1;
  for (int y = 0; y < in.height; ++y) {
    for (int x = 0; x < in.width; ++x) {
      bool result = op == Op::kErode;
      for (int dy = -radius; dy <= radius && result == (op == Op::kErode); ++dy) {
        const int yy = y + dy;
        const int half = hw[static_cast<std::size_t>(dy + radius)];
        const int x0 = x - half;
        const int x1 = x + half;  // inclusive
        if (yy < 0 || yy >= in.height) {
          if (op == Op::kErode) result = false;
          continue;
        }
        const int cx0 = std::max(x0, 0);
        const int cx1 = std::min(x1, in.width - 1);
        const int* p = &prefix[stride * static_cast<std::size_t>(yy)];
        const int count = p[cx1 + 1] - p[cx0];
        if (op == Op::kDilate) {
          if (count > 0) result = true;
        } else if (cx0 != x0 || cx1 != x1 || count != x1 - x0 + 1) {
          result = false;
        }
      }
      out.bits[static_cast<std::size_t>(y) * static_cast<std::size_t>(in.width) + static_cast<std::size_t>(x)] =
          result ? 1 : 0;
    }
  }
  return out;
}

Grid to_grid(const BinaryMask& m, int pad) {
  Grid g{m.width() + 2 * pad, m.height() + 2 * pad, {}};
  g.bits.assign(static_cast<std::size_t>(g.width) * static_cast<std::size_t>(g.height), 0);
  for (int y = 0; y < m.height(); ++y) {
    for (int x = 0; x < m.width(); ++x) {
      g.bits[static_cast<std::size_t>(y + pad) * static_cast<std::size_t>(g.width) + static_cast<std::size_t>(x + pad)] =
          m.at(x, y) ? 1 : 0;
    }
  }
  return g;
}

BinaryMask from_grid(const Grid& g, int pad, const BinaryMask& like) {
  BinaryMask out(like.width(), like.height(), like.magnification());
  for (int y = 0; y < like.height(); ++y) {
    for (int x = 0; x < like.width(); ++x) {
      out.set(x, y,
              g.bits[static_cast<std::size_t>(y + pad) * static_cast<std::size_t>(g.width) +
                     static_cast<std::size_t>(x + pad)] != 0);
    }
  }
  return out;
}

void check_radius(int radius) {
  if (radius < 0) fail(ErrorCode::kInvalidArgument, "structuring element radius must be >= 0");
}

}  // namespace

BinaryMask dilate(const BinaryMask& m, int radius) {
  check_radius(radius);
  if (radius == 0) return m;
  return from_grid(apply(to_grid(m, 0), radius, Op::kDilate), 0, m);
}

BinaryMask erode(const BinaryMask& m, int radius) {
  check_radius(radius);
  if (radius == 0) return m;
  return from_grid(apply(to_grid(m, 0), radius, Op::kErode), 0, m);
}

BinaryMask morphological_close(const BinaryMask& m, int radius) {
  check_radius(radius);
  if (radius == 0) return m;
  // A margin of `radius` glass pixels lets the dilation spill past the border
  // so the erosion never sees an artificial edge.
  const Grid padded = to_grid(m, radius);
  return from_grid(apply(apply(padded, radius, Op::kDilate), radius, Op::kErode), radius, m);
}

}  // namespace slimslide
