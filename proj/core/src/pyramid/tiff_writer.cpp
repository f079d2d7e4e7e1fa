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

// Classic little-endian tiled TIFF writer.
//
// File layout:
//   header (8 bytes) | tile payloads, level by level, row-major |
//   IFD 0 + its out-of-line values | IFD 1 + values | ...
// Empty tiles get TileOffsets = 0 and TileByteCounts = 0 and occupy no bytes.
// Every IFD and value block starts on a word boundary.

#include <algorithm>
#include <fstream>
#include <string>
#include <vector>

#include "pyramid/tiff_format.hpp"
#include "slimslide/error.hpp"
#include "slimslide/parallel.hpp"
#include "slimslide/pyramid.hpp"

namespace slimslide {
namespace {

class LeBuffer {
 public:
  void u16(std::uint16_t v) {
    bytes_.push_back(static_cast<std::uint8_t>(v));
    bytes_.push_back(static_cast<std::uint8_t>(v >> 8));
  }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) bytes_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void raw(std::string_view s) { bytes_.insert(bytes_.end(), s.begin(), s.end()); }
  void pad_to_word() {
    if (bytes_.size() % 2) bytes_.push_back(0);
  }
  [[nodiscard]] std::size_t size() const { return bytes_.size(); }
  [[nodiscard]] const Bytes& bytes() const { return bytes_; }

 private:
  Bytes bytes_;
};

struct Entry {
  std::uint16_t tag;
  std::uint16_t type;
  std::uint32_t count;
  Bytes value;  // little-endian encoded values
};

Entry shorts(std::uint16_t tag, std::initializer_list<std::uint16_t> values) {
  LeBuffer b;
  for (auto v : values) b.u16(v);
  return {tag, tiff::kShort, static_cast<std::uint32_t>(values.size()), b.bytes()};
}

Entry longs(std::uint16_t tag, const std::vector<std::uint32_t>& values) {
  LeBuffer b;
  for (auto v : values) b.u32(v);
  return {tag, tiff::kLong, static_cast<std::uint32_t>(values.size()), b.bytes()};
}

Entry ascii(std::uint16_t tag, const std::string& text) {
  LeBuffer b;
  b.raw(text);
  Bytes value = b.bytes();
  value.push_back(0);
  return {tag, tiff::kAscii, static_cast<std::uint32_t>(value.size()), std::move(value)};
}

/// Serializes one IFD placed at absolute offset `base`; `next_ifd` is the
/// offset of the following IFD or 0.
Bytes serialize_ifd(std::vector<Entry> entries, std::uint32_t base, std::uint32_t next_ifd) {
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.tag < b.tag; });
  const std::uint32_t table_size = 2 + 12 * static_cast<std::uint32_t>(entries.size()) + 4;
  LeBuffer table;
  LeBuffer extra;
  table.u16(static_cast<std::uint16_t>(entries.size()));
  for (const Entry& e : entries) {
    table.u16(e.tag);
    table.u16(e.type);
    table.u32(e.count);
    if (e.value.size() <= 4) {
      Bytes inline_value = e.value;
      inline_value.resize(4, 0);
      for (auto byte : inline_value) table.raw(std::string_view(reinterpret_cast<const char*>(&byte), 1));
    } else {
      extra.pad_to_word();
      table.u32(base + table_size + static_cast<std::uint32_t>(extra.size()));
      extra.raw(std::string_view(reinterpret_cast<const char*>(e.value.data()), e.value.size()));
    }
  }
  table.u32(next_ifd);
  Bytes out = table.bytes();
  out.insert(out.end(), extra.bytes().begin(), extra.bytes().end());
  if (out.size() % 2) out.push_back(0);
  return out;
}

void check_geometry(const PyramidLevel& level) {
  if (level.tile_w % 16 != 0 || level.tile_h % 16 != 0) {
    fail(ErrorCode::kInvalidArgument, "TIFF tile dimensions must be multiples of 16, got " +
                                          std::to_string(level.tile_w) + "x" + std::to_string(level.tile_h));
  }
}

}  // namespace

PyramidWriter::PyramidWriter(double base_magnification, std::vector<PyramidLevel> levels, CodecSpec codec,
                             Rgb background)
    : staged_(base_magnification, std::move(levels), codec, background) {
  tiff::compression_code(codec.family);
  if (!codec_available(codec.family)) {
    fail(ErrorCode::kCodecUnavailable, std::string(to_string(codec.family)) + " support is not built in");
  }
  for (const auto& level : staged_.levels()) check_geometry(level);
}

void PyramidWriter::submit(const TileRef& t, TileStatus status) {
  std::lock_guard lock(mutex_);
  staged_.set_tile(t, std::move(status));
}

std::uint64_t PyramidWriter::finalize(const std::filesystem::path& path) {
  std::lock_guard lock(mutex_);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::kIoFailure, "cannot create " + path.string());

  std::uint64_t pos = 8;
  auto write = [&](const std::uint8_t* data, std::size_t n) {
    out.write(reinterpret_cast<const char*>(data), static_cast<std::streamsize>(n));
    pos += n;
  };
  const std::uint8_t placeholder[8] = {'I', 'I', 42, 0, 0, 0, 0, 0};
  out.write(reinterpret_cast<const char*>(placeholder), 8);

  const auto& levels = staged_.levels();
  std::vector<std::vector<std::uint32_t>> offsets(levels.size());
  std::vector<std::vector<std::uint32_t>> counts(levels.size());
  const std::uint8_t zero = 0;
  for (const auto& level : levels) {
    auto& lo = offsets[static_cast<std::size_t>(level.index)];
    auto& lc = counts[static_cast<std::size_t>(level.index)];
    for (int row = 0; row < level.tiles_down(); ++row) {
      for (int col = 0; col < level.tiles_across(); ++col) {
        const TileStatus& s = staged_.tile({level.index, col, row});
        if (s.is_empty()) {
          lo.push_back(0);
          lc.push_back(0);
          continue;
        }
        if (pos + s.bytes().size() > 0xFFFFFFF0ull) fail(ErrorCode::kIoFailure, "pyramid exceeds the classic TIFF 4 GiB limit");
        lo.push_back(static_cast<std::uint32_t>(pos));
        lc.push_back(static_cast<std::uint32_t>(s.bytes().size()));
        write(s.bytes().data(), s.bytes().size());
        if (pos % 2) write(&zero, 1);
      }
    }
  }

  const CodecSpec& codec = staged_.tile_codec();
  const std::string description = tiff::format_description(staged_.background_color(), staged_.base_magnification(), codec);
  const std::uint32_t first_ifd = static_cast<std::uint32_t>(pos);
  for (std::size_t k = 0; k < levels.size(); ++k) {
    const PyramidLevel& level = levels[k];
    std::vector<Entry> entries;
    entries.push_back(longs(tiff::kNewSubfileType, {k == 0 ? 0u : 1u}));
    entries.push_back(longs(tiff::kImageWidth, {static_cast<std::uint32_t>(level.width_px)}));
    entries.push_back(longs(tiff::kImageLength, {static_cast<std::uint32_t>(level.height_px)}));
    entries.push_back(shorts(tiff::kBitsPerSample, {8, 8, 8}));
    entries.push_back(shorts(tiff::kCompression, {tiff::compression_code(codec.family)}));
    const bool jpeg = codec.family == CodecFamily::kJpeg;
    entries.push_back(shorts(tiff::kPhotometric, {jpeg ? tiff::kPhotometricYCbCr : tiff::kPhotometricRgb}));
    entries.push_back(ascii(tiff::kImageDescription, description));
    entries.push_back(shorts(tiff::kSamplesPerPixel, {3}));
    entries.push_back(shorts(tiff::kPlanarConfiguration, {1}));
    entries.push_back(longs(tiff::kTileWidth, {static_cast<std::uint32_t>(level.tile_w)}));
    entries.push_back(longs(tiff::kTileLength, {static_cast<std::uint32_t>(level.tile_h)}));
    entries.push_back(longs(tiff::kTileOffsets, offsets[k]));
    entries.push_back(longs(tiff::kTileByteCounts, counts[k]));
    if (jpeg) {
      const std::uint16_t h = codec.chroma == ChromaSubsampling::k444 ? 1 : 2;
      const std::uint16_t v = codec.chroma == ChromaSubsampling::k420 ? 2 : 1;
      entries.push_back(shorts(tiff::kYCbCrSubsampling, {h, v}));
    }

    // The next IFD begins right after this one, so its size must be known
    // first: serialize once with a dummy link to measure.
    const auto base = static_cast<std::uint32_t>(pos);
    const std::size_t size = serialize_ifd(entries, base, 0).size();
    const std::uint32_t next = k + 1 < levels.size() ? static_cast<std::uint32_t>(base + size) : 0;
    const Bytes ifd = serialize_ifd(std::move(entries), base, next);
    if (pos + ifd.size() > 0xFFFFFFFFull) fail(ErrorCode::kIoFailure, "pyramid exceeds the classic TIFF 4 GiB limit");
    write(ifd.data(), ifd.size());
  }

  out.seekp(4);
  const std::uint8_t link[4] = {static_cast<std::uint8_t>(first_ifd), static_cast<std::uint8_t>(first_ifd >> 8),
                                static_cast<std::uint8_t>(first_ifd >> 16), static_cast<std::uint8_t>(first_ifd >> 24)};
  out.write(reinterpret_cast<const char*>(link), 4);
  out.close();
  if (!out) fail(ErrorCode::kIoFailure, "write failed on " + path.string());
  return file_size_bytes(path);
}

std::uint64_t write_pyramid(const TiledPyramid& p, const std::filesystem::path& path, const CodecSpec& codec,
                            unsigned threads) {
  PyramidWriter writer(p.base_magnification(), p.levels(), codec, p.background_color());
  const bool transcode = !(codec == p.tile_codec());
  std::vector<TileRef> refs;
  for (const auto& level : p.levels()) {
    for (int row = 0; row < level.tiles_down(); ++row) {
      for (int col = 0; col < level.tiles_across(); ++col) refs.push_back({level.index, col, row});
    }
  }
  parallel_for(refs.size(), transcode ? threads : 1, [&](std::size_t i) {
    const TileStatus& s = p.tile(refs[i]);
    if (s.is_empty() || !transcode) {
      writer.submit(refs[i], s);
    } else {
      writer.submit(refs[i], encode_tile(read_tile(p, refs[i]), codec));
    }
  });
  return writer.finalize(path);
}

}  // namespace slimslide
