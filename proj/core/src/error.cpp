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

#include "slimslide/error.hpp"

namespace slimslide {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kInvalidDimensions: return "InvalidDimensions";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kIoFailure: return "IoFailure";
    case ErrorCode::kNotTiled: return "NotTiled";
    case ErrorCode::kUnsupportedCodec: return "UnsupportedCodec";
    case ErrorCode::kCorruptDirectory: return "CorruptDirectory";
    case ErrorCode::kCodecUnavailable: return "CodecUnavailable";
    case ErrorCode::kEncodeFailure: return "EncodeFailure";
    case ErrorCode::kDecodeFailure: return "DecodeFailure";
    case ErrorCode::kInvalidLevel: return "InvalidLevel";
    case ErrorCode::kInsufficientPatches: return "InsufficientPatches";
    case ErrorCode::kMissingPatch: return "MissingPatch";
    case ErrorCode::kMaskRequired: return "MaskRequired";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kInvalidSpec: return "InvalidSpec";
    case ErrorCode::kMagnificationUnavailable: return "MagnificationUnavailable";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

}  // namespace slimslide
