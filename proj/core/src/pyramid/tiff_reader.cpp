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

// Tiled TIFF reader. Accepts both byte orders of classic TIFF; every IFD in
// the chain must be a tiled 8-bit RGB level. A tile whose byte count is zero
// is empty and its offset is never dereferenced.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pyramid/tiff_format.hpp"
#include "slimslide/error.hpp"
#include "slimslide/pyramid.hpp"

namespace slimslide {
namespace {

constexpr std::size_t kMaxDirectories = 1024;

struct RawEntry {
  std::uint16_t type = 0;
  std::uint32_t count = 0;
  std::uint32_t value_offset = 0;  // absolute offset of the value bytes
};

class TiffBuffer {
 public:
  TiffBuffer(const Bytes& bytes, std::string name) : bytes_(bytes), name_(std::move(name)) {
    if (bytes_.size() < 8) corrupt("file shorter than a TIFF header");
    if (bytes_[0] == 'I' && bytes_[1] == 'I') {
      little_ = true;
    } else if (bytes_[0] == 'M' && bytes_[1] == 'M') {
      little_ = false;
    } else {
      corrupt("missing TIFF byte-order mark");
    }
    const std::uint16_t magic = u16(2);
    if (magic == 43) corrupt("BigTIFF is not supported");
    if (magic != 42) corrupt("bad TIFF magic number");
  }

  [[noreturn]] void corrupt(const std::string& what) const {
    fail(ErrorCode::kCorruptDirectory, name_ + ": " + what);
  }

  void need(std::uint64_t offset, std::uint64_t len) const {
    if (offset + len > bytes_.size()) corrupt("reference past end of file");
  }

  [[nodiscard]] std::uint16_t u16(std::uint64_t off) const {
    need(off, 2);
    const auto a = bytes_[off];
    const auto b = bytes_[off + 1];
    return static_cast<std::uint16_t>(little_ ? (a | (b << 8)) : ((a << 8) | b));
  }
  [[nodiscard]] std::uint32_t u32(std::uint64_t off) const {
    need(off, 4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) {
      const std::uint32_t byte = bytes_[off + static_cast<std::uint64_t>(i)];
      v |= little_ ? byte << (8 * i) : byte << (8 * (3 - i));
    }
    return v;
  }

  [[nodiscard]] const Bytes& bytes() const { return bytes_; }

 private:
  const Bytes& bytes_;
  std::string name_;
  bool little_ = true;
};

using Directory = std::map<std::uint16_t, RawEntry>;

Directory read_directory(const TiffBuffer& buf, std::uint32_t offset, std::uint32_t& next) {
  const std::uint16_t n = buf.u16(offset);
  buf.need(offset, 2ull + 12ull * n + 4ull);
  Directory dir;
  for (std::uint16_t i = 0; i < n; ++i) {
    const std::uint64_t e = offset + 2ull + 12ull * i;
    const std::uint16_t tag = buf.u16(e);
    RawEntry entry;
    entry.type = buf.u16(e + 2);
    entry.count = buf.u32(e + 4);
    const std::uint64_t size = static_cast<std::uint64_t>(tiff::type_size(entry.type)) * entry.count;
    if (size <= 4) {
      entry.value_offset = static_cast<std::uint32_t>(e + 8);
    } else {
      entry.value_offset = buf.u32(e + 8);
      buf.need(entry.value_offset, size);
    }
    dir[tag] = entry;
  }
  next = buf.u32(offset + 2ull + 12ull * n);
  return dir;
}

std::vector<std::uint32_t> values(const TiffBuffer& buf, const RawEntry& e) {
  std::vector<std::uint32_t> out(e.count);
  for (std::uint32_t i = 0; i < e.count; ++i) {
    switch (e.type) {
      case tiff::kByte:
      case tiff::kUndefined:
        buf.need(e.value_offset + i, 1);
        out[i] = buf.bytes()[e.value_offset + i];
        break;
      case tiff::kShort: out[i] = buf.u16(e.value_offset + 2ull * i); break;
      case tiff::kLong: out[i] = buf.u32(e.value_offset + 4ull * i); break;
      default: buf.corrupt("unexpected field type " + std::to_string(e.type) + " for an integer tag");
    }
  }
  return out;
}

std::uint32_t scalar(const TiffBuffer& buf, const Directory& dir, std::uint16_t tag, std::optional<std::uint32_t> fallback) {
  const auto it = dir.find(tag);
  if (it == dir.end()) {
    if (fallback) return *fallback;
    buf.corrupt("missing required tag " + std::to_string(tag));
  }
  const auto v = values(buf, it->second);
  if (v.empty()) buf.corrupt("tag " + std::to_string(tag) + " has no value");
  return v[0];
}

std::string ascii_value(const TiffBuffer& buf, const RawEntry& e) {
  std::string out(reinterpret_cast<const char*>(buf.bytes().data() + e.value_offset), e.count);
  const auto nul = out.find('\0');
  if (nul != std::string::npos) out.resize(nul);
  return out;
}

struct ParsedLevel {
  PyramidLevel geometry;
  std::uint16_t compression = 0;
  std::vector<std::uint32_t> offsets;
  std::vector<std::uint32_t> counts;
  std::string description;
};

}  // namespace

TiledPyramid open_pyramid(const std::filesystem::path& path) {
  const Bytes bytes = read_file_bytes(path);
  const TiffBuffer buf(bytes, path.string());

  std::vector<ParsedLevel> parsed;
  std::set<std::uint32_t> seen;
  std::uint32_t offset = buf.u32(4);
  while (offset != 0) {
    if (!seen.insert(offset).second) buf.corrupt("IFD chain loops");
    if (seen.size() > kMaxDirectories) buf.corrupt("too many directories");
    std::uint32_t next = 0;
    const Directory dir = read_directory(buf, offset, next);
    offset = next;

    if (!dir.contains(tiff::kTileWidth) || !dir.contains(tiff::kTileLength)) {
      fail(ErrorCode::kNotTiled, path.string() + ": directory " + std::to_string(parsed.size()) +
                                     " is strip-organized, not tiled");
    }
    ParsedLevel level;
    PyramidLevel& g = level.geometry;
    g.width_px = static_cast<int>(scalar(buf, dir, tiff::kImageWidth, std::nullopt));
    g.height_px = static_cast<int>(scalar(buf, dir, tiff::kImageLength, std::nullopt));
    g.tile_w = static_cast<int>(scalar(buf, dir, tiff::kTileWidth, std::nullopt));
    g.tile_h = static_cast<int>(scalar(buf, dir, tiff::kTileLength, std::nullopt));
    if (g.width_px < 1 || g.height_px < 1 || g.tile_w < 1 || g.tile_h < 1) buf.corrupt("non-positive geometry");

    if (scalar(buf, dir, tiff::kSamplesPerPixel, 1u) != 3) {
      fail(ErrorCode::kUnsupportedCodec, path.string() + ": only 3-sample RGB levels are supported");
    }
    if (dir.contains(tiff::kBitsPerSample)) {
      for (auto bits : values(buf, dir.at(tiff::kBitsPerSample))) {
        if (bits != 8) fail(ErrorCode::kUnsupportedCodec, path.string() + ": only 8-bit samples are supported");
      }
    }
    if (scalar(buf, dir, tiff::kPlanarConfiguration, 1u) != 1) {
      fail(ErrorCode::kUnsupportedCodec, path.string() + ": planar-separate levels are not supported");
    }
    level.compression = static_cast<std::uint16_t>(scalar(buf, dir, tiff::kCompression, 1u));
    if (!dir.contains(tiff::kTileOffsets) || !dir.contains(tiff::kTileByteCounts)) {
      buf.corrupt("tiled directory without TileOffsets/TileByteCounts");
    }
    level.offsets = values(buf, dir.at(tiff::kTileOffsets));
    level.counts = values(buf, dir.at(tiff::kTileByteCounts));
    if (level.offsets.size() != g.tile_count() || level.counts.size() != g.tile_count()) {
      buf.corrupt("tile array length does not match the tile grid");
    }
    for (std::size_t i = 0; i < level.counts.size(); ++i) {
      if (level.counts[i] != 0) buf.need(level.offsets[i], level.counts[i]);
    }
    if (dir.contains(tiff::kImageDescription)) {
      level.description = ascii_value(buf, dir.at(tiff::kImageDescription));
    }
    parsed.push_back(std::move(level));
  }
  if (parsed.empty()) buf.corrupt("no image directories");

  std::stable_sort(parsed.begin(), parsed.end(), [](const ParsedLevel& a, const ParsedLevel& b) {
    return a.geometry.width_px > b.geometry.width_px;
  });
  const std::uint16_t compression = parsed.front().compression;
  const auto family = tiff::family_from_compression(compression);
  if (!family) fail(ErrorCode::kUnsupportedCodec, path.string() + ": TIFF compression " + std::to_string(compression));
  for (const auto& level : parsed) {
    if (level.compression != compression) fail(ErrorCode::kUnsupportedCodec, path.string() + ": mixed compression across levels");
  }

  const tiff::Description meta = tiff::parse_description(parsed.front().description);
  CodecSpec codec = meta.codec && meta.codec->family == *family ? *meta.codec : CodecSpec{};
  if (!(meta.codec && meta.codec->family == *family)) {
    switch (*family) {
      case CodecFamily::kJpeg: codec = CodecSpec::jpeg(); break;
      case CodecFamily::kPng: codec = CodecSpec::png(); break;
      case CodecFamily::kJpeg2000: codec = CodecSpec::jpeg2000(); break;
      case CodecFamily::kJpegXl: codec = CodecSpec::jpeg_xl(); break;
      case CodecFamily::kMockLearned: break;
    }
  }

  std::vector<PyramidLevel> levels;
  const double base_width = parsed.front().geometry.width_px;
  for (std::size_t k = 0; k < parsed.size(); ++k) {
    PyramidLevel g = parsed[k].geometry;
    g.index = static_cast<int>(k);
    g.downsample = base_width / g.width_px;
    if (k > 0 && !(g.downsample > levels.back().downsample)) buf.corrupt("two directories share one resolution");
    levels.push_back(g);
  }

  TiledPyramid pyramid(meta.magnification.value_or(40.0), std::move(levels), codec, meta.background.value_or(kWhite));
  for (std::size_t k = 0; k < parsed.size(); ++k) {
    const PyramidLevel& g = pyramid.level(static_cast<int>(k));
    for (int row = 0; row < g.tiles_down(); ++row) {
      for (int col = 0; col < g.tiles_across(); ++col) {
        const std::size_t i = static_cast<std::size_t>(row) * static_cast<std::size_t>(g.tiles_across()) +
                              static_cast<std::size_t>(col);
        const std::uint32_t count = parsed[k].counts[i];
        if (count == 0) continue;
        const auto first = bytes.begin() + parsed[k].offsets[i];
        pyramid.set_tile({static_cast<int>(k), col, row}, TileStatus::present(Bytes(first, first + count)));
      }
    }
  }
  return pyramid;
}

}  // namespace slimslide
