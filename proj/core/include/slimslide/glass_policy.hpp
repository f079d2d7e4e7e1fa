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

#include <string>
#include <string_view>
#include <variant>

#include "slimslide/image.hpp"

namespace slimslide {

struct KeepGlass {
  friend bool operator==(const KeepGlass&, const KeepGlass&) = default;
};
/// Every glass pixel becomes `color`.
struct SingleColor {
  Rgb color = kWhite;
  friend bool operator==(const SingleColor&, const SingleColor&) = default;
};
/// All-glass tiles are dropped (zero-byte); glass pixels in mixed tiles
/// become `mixed_fill`.
struct EmptyTiles {
  Rgb mixed_fill = kWhite;
  friend bool operator==(const EmptyTiles&, const EmptyTiles&) = default;
};

using GlassPolicy = std::variant<KeepGlass, SingleColor, EmptyTiles>;

/// `keep`, `white` / `single:RRGGBB`, `empty` / `empty:RRGGBB`.
std::string policy_label(const GlassPolicy& policy);
GlassPolicy parse_policy(std::string_view text);

class BinaryMask;

/// Sets every pixel of `pixels` whose mask pixel (mask_x + x, mask_y + y) is
/// glass to `color`. Pixels that fall outside the mask are left untouched.
void fill_glass(RgbImage& pixels, const BinaryMask& mask, int mask_x, int mask_y, Rgb color);

}  // namespace slimslide
