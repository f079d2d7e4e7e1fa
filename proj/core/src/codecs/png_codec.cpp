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

#include "codecs/backends.hpp"
#include "slimslide/png_io.hpp"

namespace slimslide::detail {

Bytes png_encode(const RgbImage& img) { return png::encode_rgb(img); }

RgbImage png_decode(std::span<const std::uint8_t> data) { return png::decode_rgb(data); }

}  // namespace slimslide::detail
