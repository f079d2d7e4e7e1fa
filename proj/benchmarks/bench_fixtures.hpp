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

#include <cstdint>

#include "slimslide/image.hpp"
#include "slimslide/segmentation.hpp"

namespace slimslide::bench {

/// Tissue-like texture with smooth colour variation; deterministic in `seed`.
RgbImage texture(int width, int height, std::uint64_t seed);
/// Threshold mask of texture(width, height, seed).
BinaryMask texture_mask(int width, int height, std::uint64_t seed);

}  // namespace slimslide::bench
