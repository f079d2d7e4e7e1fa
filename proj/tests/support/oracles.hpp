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

// Reference implementations used only by tests. They follow the textbook
// definitions directly and share no code with the library.

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "slimslide/codecs.hpp"
#include "slimslide/image.hpp"
#include "slimslide/pyramid.hpp"
#include "slimslide/segmentation.hpp"

namespace slimslide::testing {

/// Tissue iff the squared RGB distance from white exceeds 85^2, in integers.
bool reference_is_tissue(Rgb p);

/// Disk offsets with dx^2 + dy^2 <= r^2, evaluated pixel by pixel. Outside
/// pixels are glass.
BinaryMask brute_dilate(const BinaryMask& m, int r);
BinaryMask brute_erode(const BinaryMask& m, int r);
/// Closing as if the mask sat in an infinite glass plane.
BinaryMask brute_close(const BinaryMask& m, int r);

/// Mean SSIM over every full 11x11 window, computing each window's
/// statistics directly from a 2-D Gaussian weight table.
double direct_ssim(const RgbImage& a, const RgbImage& b);

RgbImage random_image(int w, int h, std::uint64_t seed);
BinaryMask random_mask(int w, int h, double density, std::uint64_t seed);
/// Smooth-ish random image: low-frequency gradients plus mild noise.
RgbImage natural_image(int w, int h, std::uint64_t seed);

/// Unique directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  [[nodiscard]] const std::filesystem::path& path() const noexcept { return path_; }
  [[nodiscard]] std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};



/// Tags of one classic little-endian TIFF directory, each as a list of
/// unsigned values. Parsed without any library code.
using TiffTags = std::map<std::uint16_t, std::vector<std::uint64_t>>;
std::vector<TiffTags> probe_tiff(const std::filesystem::path& path);
/// ASCII tag payload (e.g. ImageDescription) of directory `ifd`.
std::string probe_tiff_ascii(const std::filesystem::path& path, std::size_t ifd, std::uint16_t tag);

/// Pyramid whose level k is `img` box-halved k times, every tile Present.
TiledPyramid pyramid_from_image(const RgbImage& img, int n_levels, int tile, const CodecSpec& codec,
                                double base_magnification = 40.0);

struct CommandResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};
/// Runs `command` through the shell, capturing stdout and stderr.
CommandResult run_command(const std::string& command);

}  // namespace slimslide::testing
