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

#include <stdexcept>
#include <string>
#include <string_view>

namespace slimslide {

enum class ErrorCode {
  kInvalidArgument,
  kInvalidDimensions,
  kDimensionMismatch,
  kIoFailure,
  kNotTiled,
  kUnsupportedCodec,
  kCorruptDirectory,
  kCodecUnavailable,
  kEncodeFailure,
  kDecodeFailure,
  kInvalidLevel,
  kInsufficientPatches,
  kMissingPatch,
  kMaskRequired,
  kEmptyInput,
  kInvalidSpec,
  kMagnificationUnavailable,
};

std::string_view to_string(ErrorCode code);

/// Exception type thrown by every slimslide operation. The code is stable and
/// is what the CLI maps onto exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace slimslide
