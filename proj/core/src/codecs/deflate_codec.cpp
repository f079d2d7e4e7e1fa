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

#include <zlib.h>

#include <string>

#include "codecs/backends.hpp"
#include "slimslide/error.hpp"

namespace slimslide::detail {

Bytes deflate_bytes(std::span<const std::uint8_t> raw, int level) {
  uLongf bound = compressBound(static_cast<uLong>(raw.size()));
  Bytes out(bound);
  const int rc = compress2(out.data(), &bound, raw.data(), static_cast<uLong>(raw.size()), level);
  if (rc != Z_OK) fail(ErrorCode::kEncodeFailure, "zlib compress2 failed with code " + std::to_string(rc));
  out.resize(bound);
  return out;
}

Bytes inflate_bytes(std::span<const std::uint8_t> compressed, std::size_t expected_size) {
  Bytes out(expected_size);
  uLongf out_len = static_cast<uLongf>(expected_size);
  const int rc = uncompress(out.data(), &out_len, compressed.data(), static_cast<uLong>(compressed.size()));
  if (rc != Z_OK) fail(ErrorCode::kDecodeFailure, "zlib stream is corrupt or truncated (code " + std::to_string(rc) + ")");
  if (out_len != expected_size) {
    fail(ErrorCode::kDecodeFailure, "inflated " + std::to_string(out_len) + " bytes, expected " + std::to_string(expected_size));
  }
  return out;
}

}  // namespace slimslide::detail
