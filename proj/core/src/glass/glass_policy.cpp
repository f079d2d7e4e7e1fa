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
#include <string>

#include "slimslide/error.hpp"
#include "slimslide/glass_policy.hpp"
#include "slimslide/segmentation.hpp"

namespace slimslide {

std::string policy_label(const GlassPolicy& policy) {
  struct Visitor {
    std::string operator()(const KeepGlass&) const { return "keep"; }
    std::string operator()(const SingleColor& s) const { return "single:" + to_hex(s.color); }
    std::string operator()(const EmptyTiles& e) const { return "empty:" + to_hex(e.mixed_fill); }
  };
  return std::visit(Visitor{}, policy);
}

GlassPolicy parse_policy(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view name = text.substr(0, colon);
  const std::string_view arg = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  if (name == "keep" || name == "keepglass") {
    if (!arg.empty()) fail(ErrorCode::kInvalidArgument, "policy 'keep' takes no colour");
    return KeepGlass{};
  }
  if (name == "white") {
    if (!arg.empty()) fail(ErrorCode::kInvalidArgument, "policy 'white' takes no colour");
    return SingleColor{kWhite};
  }
  if (name == "single" || name == "singlecolor") return SingleColor{arg.empty() ? kWhite : rgb_from_hex(arg)};
  if (name == "empty" || name == "emptytiles") return EmptyTiles{arg.empty() ? kWhite : rgb_from_hex(arg)};
  fail(ErrorCode::kInvalidArgument, "unknown glass policy '" + std::string(text) + "'");
}

void fill_glass(RgbImage& pixels, const BinaryMask& mask, int mask_x, int mask_y, Rgb color) {
  const int y0 = std::max(0, -mask_y);
  const int y1 = std::min(pixels.height(), mask.height() - mask_y);
  const int x0 = std::max(0, -mask_x);
  const int x1 = std::min(pixels.width(), mask.width() - mask_x);
  for (int y = y0; y < y1; ++y) {
    for (int x = x0; x < x1; ++x) {
      if (!mask.at(mask_x + x, mask_y + y)) pixels.set(x, y, color);
    }
  }
}

}  // namespace slimslide
