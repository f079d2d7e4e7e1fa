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

#include "pyramid/tiff_format.hpp"

#include <cstdio>
#include <sstream>

#include "slimslide/error.hpp"

namespace slimslide::tiff {

std::uint32_t type_size(std::uint16_t type) {
  switch (type) {
    case kByte:
    case kAscii:
    case kSByte:
    case kUndefined:
      return 1;
    case kShort:
    case kSShort:
      return 2;
    case kLong:
    case kSLong:
    case kFloat:
      return 4;
    case kRational:
    case kSRational:
    case kDouble:
      return 8;
    default:
      return 0;
  }
}

std::uint16_t compression_code(CodecFamily family) {
  switch (family) {
    case CodecFamily::kJpeg: return kCompressionJpeg;
    case CodecFamily::kPng: return kCompressionDeflate;
    case CodecFamily::kJpeg2000: return kCompressionJpeg2000;
    case CodecFamily::kJpegXl: return kCompressionJpegXl;
    case CodecFamily::kMockLearned: break;
  }
  fail(ErrorCode::kUnsupportedCodec, std::string(to_string(family)) + " tiles cannot be stored in a TIFF");
}

std::optional<CodecFamily> family_from_compression(std::uint16_t code) {
  switch (code) {
    case kCompressionJpeg: return CodecFamily::kJpeg;
    case kCompressionDeflate:
    case 32946:  // legacy Deflate code
      return CodecFamily::kPng;
    case kCompressionJpeg2000: return CodecFamily::kJpeg2000;
    case kCompressionJpegXl: return CodecFamily::kJpegXl;
    default: return std::nullopt;
  }
}

std::string format_description(Rgb background, double magnification, const CodecSpec& codec) {
  char mag[32];
  std::snprintf(mag, sizeof(mag), "%g", magnification);
  return "slimslide background=" + to_hex(background) + " magnification=" + mag + " codec=" + codec.label();
}

Description parse_description(std::string_view text) {
  Description out;
  std::istringstream in{std::string(text)};
  std::string token;
  std::string previous;
  while (in >> token) {
    const auto eq = token.find('=');
    if (eq != std::string::npos && eq > 0) {
      const std::string key = token.substr(0, eq);
      const std::string value = token.substr(eq + 1);
      try {
        if (key == "background") {
          out.background = rgb_from_hex(value);
        } else if (key == "magnification") {
          out.magnification = std::stod(value);
        } else if (key == "codec") {
          out.codec = parse_codec_spec(value);
        }
      } catch (const std::exception&) {
        // Malformed keys fall back to defaults.
      }
    } else if (token == "=" && previous == "AppMag") {
      std::string value;
      if (in >> value) {
        try {
          if (!out.magnification) out.magnification = std::stod(value);
        } catch (const std::exception&) {
        }
      }
    }
    previous = token;
  }
  return out;
}

}  // namespace slimslide::tiff
