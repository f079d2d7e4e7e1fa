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

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "slimslide/image.hpp"
#include "slimslide/io.hpp"

namespace slimslide {

enum class CodecFamily { kJpeg, kPng, kJpegXl, kJpeg2000, kMockLearned };

std::string_view to_string(CodecFamily family);
/// Accepts the canonical names (`jpeg`, `png`, `jpegxl`, `jpeg2000`, `mock`)
/// and the short aliases `jpg`, `jxl`, `jp2`, `mock_learned`.
CodecFamily codec_family_from_string(std::string_view name);

enum class ChromaSubsampling { k444, k422, k420 };

std::string_view to_string(ChromaSubsampling subsampling);

/// Codec family plus its quality parameter. `quality` is interpreted per
/// family: JPEG quality 0..100, JPEG-XL butteraugli distance, JPEG-2000 target
/// PSNR in dB, mock learned codec quality level 1..8. PNG ignores it.
struct CodecSpec {
  CodecFamily family = CodecFamily::kJpeg;
  double quality = 90.0;
  ChromaSubsampling chroma = ChromaSubsampling::k420;  // JPEG only
  int effort = 7;                                      // JPEG-XL only, passed through

  static CodecSpec jpeg(int quality = 90, ChromaSubsampling chroma = ChromaSubsampling::k420);
  static CodecSpec png();
  static CodecSpec jpeg_xl(double distance = 1.0);
  static CodecSpec jpeg2000(double target_psnr_db = 37.0);
  static CodecSpec mock_learned(int quality_level = 7);

  /// Throws Error(kInvalidSpec) when the parameter is out of range.
  void validate() const;
  /// `jpeg:90`, `png`, `jpegxl:1`, `jpeg2000:37`, `mock:7`.
  [[nodiscard]] std::string label() const;

  friend bool operator==(const CodecSpec&, const CodecSpec&) = default;
};

/// Parses the label syntax produced by CodecSpec::label(); the quality part is
/// optional and defaults per family.
CodecSpec parse_codec_spec(std::string_view text);

/// False for optional codecs that were not compiled in.
bool codec_available(CodecFamily family);

/// One compressed patch. The mock learned codec emits two byte strings, the
/// way an entropy-bottleneck model writes two binary files per patch.
struct EncodedPatch {
  Bytes primary;
  std::optional<Bytes> side;
  int width = 0;
  int height = 0;

  [[nodiscard]] std::size_t total_bytes() const noexcept {
    return primary.size() + (side ? side->size() : 0);
  }
};

EncodedPatch encode(const RgbImage& img, const CodecSpec& spec);
RgbImage decode(const EncodedPatch& encoded, const CodecSpec& spec);

struct TimedDecode {
  RgbImage image;
  double seconds = 0.0;
};

/// decode() bracketed by a steady clock; bytes are already in memory.
TimedDecode timed_decode(const EncodedPatch& encoded, const CodecSpec& spec);

/// Quantization step of the mock learned codec: 2^(8 - level) clamped to [1, 64].
int mock_quantization_step(int quality_level);

/// File-name suffixes used when an encoded patch is stored on disk.
std::string primary_extension(CodecFamily family);
inline constexpr std::string_view kSideExtension = ".side.bin";

}  // namespace slimslide
