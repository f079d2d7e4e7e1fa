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

#include <cmath>
#include <string>

#include "json.hpp"
#include "slimslide/codecs.hpp"
#include "slimslide/error.hpp"

namespace slimslide::detail {

inline ChromaSubsampling chroma_from_string(std::string_view s) {
  if (s == "444") return ChromaSubsampling::k444;
  if (s == "422") return ChromaSubsampling::k422;
  if (s == "420") return ChromaSubsampling::k420;
  fail(ErrorCode::kInvalidSpec, "unknown chroma subsampling '" + std::string(s) + "'");
}

inline nlohmann::json codec_to_json(const CodecSpec& spec) {
  nlohmann::json j{{"label", spec.label()}, {"family", std::string(to_string(spec.family))}, {"quality", spec.quality}};
  if (spec.family == CodecFamily::kJpeg) j["chroma"] = std::string(to_string(spec.chroma));
  if (spec.family == CodecFamily::kJpegXl) j["effort"] = spec.effort;
  return j;
}

inline CodecSpec codec_from_json(const nlohmann::json& j) {
  CodecSpec spec = parse_codec_spec(j.at("label").get<std::string>());
  if (j.contains("chroma")) spec.chroma = chroma_from_string(j.at("chroma").get<std::string>());
  if (j.contains("effort")) spec.effort = j.at("effort").get<int>();
  return spec;
}

/// JSON has no infinity; +inf is written as the string "inf".
inline nlohmann::json finite_or_inf(double v) {
  if (std::isinf(v) && v > 0) return "inf";
  if (std::isinf(v)) return "-inf";
  if (std::isnan(v)) return nullptr;
  return v;
}

inline double number_or_inf(const nlohmann::json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return INFINITY;
    if (s == "-inf") return -INFINITY;
    fail(ErrorCode::kInvalidArgument, "expected a number, got '" + s + "'");
  }
  if (j.is_null()) return NAN;
  return j.get<double>();
}

}  // namespace slimslide::detail
