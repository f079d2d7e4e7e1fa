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

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>

#include "codecs/backends.hpp"
#include "slimslide/error.hpp"

namespace slimslide {

std::string_view to_string(CodecFamily family) {
  switch (family) {
    case CodecFamily::kJpeg: return "jpeg";
    case CodecFamily::kPng: return "png";
    case CodecFamily::kJpegXl: return "jpegxl";
    case CodecFamily::kJpeg2000: return "jpeg2000";
    case CodecFamily::kMockLearned: return "mock";
  }
  return "unknown";
}

CodecFamily codec_family_from_string(std::string_view name) {
  if (name == "jpeg" || name == "jpg") return CodecFamily::kJpeg;
  if (name == "png") return CodecFamily::kPng;
  if (name == "jpegxl" || name == "jxl") return CodecFamily::kJpegXl;
  if (name == "jpeg2000" || name == "jp2") return CodecFamily::kJpeg2000;
  if (name == "mock" || name == "mock_learned") return CodecFamily::kMockLearned;
  fail(ErrorCode::kInvalidSpec, "unknown codec family '" + std::string(name) + "'");
}

std::string_view to_string(ChromaSubsampling subsampling) {
  switch (subsampling) {
    case ChromaSubsampling::k444: return "444";
    case ChromaSubsampling::k422: return "422";
    case ChromaSubsampling::k420: return "420";
  }
  return "unknown";
}

CodecSpec CodecSpec::jpeg(int quality, ChromaSubsampling chroma) {
  return {CodecFamily::kJpeg, static_cast<double>(quality), chroma, 7};
}
CodecSpec CodecSpec::png() { return {CodecFamily::kPng, 0.0, ChromaSubsampling::k420, 7}; }
CodecSpec CodecSpec::jpeg_xl(double distance) {
  return {CodecFamily::kJpegXl, distance, ChromaSubsampling::k420, 7};
}
CodecSpec CodecSpec::jpeg2000(double target_psnr_db) {
  return {CodecFamily::kJpeg2000, target_psnr_db, ChromaSubsampling::k420, 7};
}
CodecSpec CodecSpec::mock_learned(int quality_level) {
  return {CodecFamily::kMockLearned, static_cast<double>(quality_level), ChromaSubsampling::k420, 7};
}

void CodecSpec::validate() const {
  auto bad = [&](const char* what) {
    fail(ErrorCode::kInvalidSpec, label() + ": " + what);
  };
  switch (family) {
    case CodecFamily::kJpeg:
      if (!(quality >= 0 && quality <= 100) || quality != std::floor(quality)) bad("JPEG quality must be an integer in [0, 100]");
      break;
    case CodecFamily::kPng:
      break;
    case CodecFamily::kJpegXl:
      if (!(quality >= 0 && quality <= 25)) bad("JPEG-XL distance must be in [0, 25]");
      if (effort < 1 || effort > 9) bad("JPEG-XL effort must be in [1, 9]");
      break;
    case CodecFamily::kJpeg2000:
      if (!(quality > 0 && quality <= 100)) bad("JPEG-2000 target PSNR must be in (0, 100] dB");
      break;
    case CodecFamily::kMockLearned:
      if (!(quality >= 1 && quality <= 8) || quality != std::floor(quality)) bad("mock quality level must be an integer in [1, 8]");
      break;
  }
}

std::string CodecSpec::label() const {
  std::string out(to_string(family));
  if (family == CodecFamily::kPng) return out;
  char buf[32];
  std::snprintf(buf, sizeof(buf), ":%g", quality);
  return out + buf;
}

CodecSpec parse_codec_spec(std::string_view text) {
  const auto colon = text.find(':');
  const CodecFamily family = codec_family_from_string(text.substr(0, colon));
  CodecSpec spec;
  switch (family) {
    case CodecFamily::kJpeg: spec = CodecSpec::jpeg(); break;
    case CodecFamily::kPng: spec = CodecSpec::png(); break;
    case CodecFamily::kJpegXl: spec = CodecSpec::jpeg_xl(); break;
    case CodecFamily::kJpeg2000: spec = CodecSpec::jpeg2000(); break;
    case CodecFamily::kMockLearned: spec = CodecSpec::mock_learned(); break;
  }
  if (colon != std::string_view::npos) {
    const std::string value(text.substr(colon + 1));
    std::size_t used = 0;
    try {
      spec.quality = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != value.size()) {
      fail(ErrorCode::kInvalidSpec, "bad quality in codec spec '" + std::string(text) + "'");
    }
  }
  spec.validate();
  return spec;
}

bool codec_available(CodecFamily family) {
  switch (family) {
    case CodecFamily::kJpeg:
    case CodecFamily::kPng:
    case CodecFamily::kMockLearned:
      return true;
    case CodecFamily::kJpeg2000:
      return detail::jpeg2000_available();
    case CodecFamily::kJpegXl:
      return false;
  }
  return false;
}

EncodedPatch encode(const RgbImage& img, const CodecSpec& spec) {
  spec.validate();
  if (img.empty()) fail(ErrorCode::kInvalidDimensions, "cannot encode an empty image");
  if (!codec_available(spec.family)) {
    fail(ErrorCode::kCodecUnavailable, std::string(to_string(spec.family)) + " support is not built in");
  }
  EncodedPatch out;
  switch (spec.family) {
    case CodecFamily::kJpeg:
      out.primary = detail::jpeg_encode(img, static_cast<int>(spec.quality), spec.chroma);
      break;
    case CodecFamily::kPng:
      out.primary = detail::png_encode(img);
      break;
    case CodecFamily::kJpeg2000:
      out.primary = detail::jpeg2000_encode(img, spec.quality);
      break;
    case CodecFamily::kMockLearned:
      return detail::mock_encode(img, static_cast<int>(spec.quality));
    case CodecFamily::kJpegXl:
      break;
  }
  out.width = img.width();
  out.height = img.height();
  return out;
}

RgbImage decode(const EncodedPatch& encoded, const CodecSpec& spec) {
  if (!codec_available(spec.family)) {
    fail(ErrorCode::kCodecUnavailable, std::string(to_string(spec.family)) + " support is not built in");
  }
  RgbImage img;
  switch (spec.family) {
    case CodecFamily::kJpeg: img = detail::jpeg_decode(encoded.primary); break;
    case CodecFamily::kPng: img = detail::png_decode(encoded.primary); break;
    case CodecFamily::kJpeg2000: img = detail::jpeg2000_decode(encoded.primary); break;
    case CodecFamily::kMockLearned: img = detail::mock_decode(encoded); break;
    case CodecFamily::kJpegXl: break;
  }
  if (encoded.width > 0 && (img.width() != encoded.width || img.height() != encoded.height)) {
    fail(ErrorCode::kDecodeFailure, "decoded size does not match the encoded patch header");
  }
  return img;
}

TimedDecode timed_decode(const EncodedPatch& encoded, const CodecSpec& spec) {
  const auto start = std::chrono::steady_clock::now();
  RgbImage img = decode(encoded, spec);
  const auto stop = std::chrono::steady_clock::now();
  return {std::move(img), std::chrono::duration<double>(stop - start).count()};
}

int mock_quantization_step(int quality_level) {
  const int exponent = 8 - quality_level;
  if (exponent <= 0) return 1;
  if (exponent >= 6) return 64;
  return 1 << exponent;
}

std::string primary_extension(CodecFamily family) {
  switch (family) {
    case CodecFamily::kJpeg: return ".jpg";
    case CodecFamily::kPng: return ".png";
    case CodecFamily::kJpegXl: return ".jxl";
    case CodecFamily::kJpeg2000: return ".jp2";
    case CodecFamily::kMockLearned: return ".bin";
  }
  return ".bin";
}

}  // namespace slimslide
