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

#include "slimslide/png_io.hpp"

#include <png.h>

#include <csetjmp>
#include <cstring>
#include <unordered_map>

#include "slimslide/error.hpp"

namespace slimslide::png {
namespace {

// libpng reports errors through longjmp. Every function that calls setjmp
// below keeps its C++ objects declared before the setjmp call so the jump
// never skips a constructor.

struct ReadCursor {
  std::span<const std::uint8_t> data;
  std::size_t pos = 0;
};

void read_callback(png_structp png_ptr, png_bytep out, png_size_t len) {
  auto* cur = static_cast<ReadCursor*>(png_get_io_ptr(png_ptr));
  if (cur->pos + len > cur->data.size()) {
    png_error(png_ptr, "truncated PNG stream");
  }
  std::memcpy(out, cur->data.data() + cur->pos, len);
  cur->pos += len;
}

void write_callback(png_structp png_ptr, png_bytep in, png_size_t len) {
  auto* out = static_cast<Bytes*>(png_get_io_ptr(png_ptr));
  out->insert(out->end(), in, in + len);
}

void flush_callback(png_structp) {}

void warning_callback(png_structp, png_const_charp) {}

struct WriteArgs {
  int width;
  int height;
  int bit_depth;
  int color_type;
  int zlib_level;
  const TextChunks* text;
  std::vector<png_bytep> rows;
  std::vector<png_text> text_entries;  // sized before setjmp
  std::vector<png_color> palette;      // PNG_COLOR_TYPE_PALETTE only
};

bool write_png(WriteArgs& args, Bytes& out, std::string& error) {
  png_structp png_ptr = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, warning_callback);
  if (!png_ptr) {
    error = "png_create_write_struct failed";
    return false;
  }
  png_infop info_ptr = png_create_info_struct(png_ptr);
  std::vector<png_text>& text_entries = args.text_entries;
  text_entries.resize(args.text ? args.text->size() : 0);
  if (!info_ptr || setjmp(png_jmpbuf(png_ptr))) {
    png_destroy_write_struct(&png_ptr, info_ptr ? &info_ptr : nullptr);
    error = "libpng write error";
    return false;
  }
  png_set_write_fn(png_ptr, &out, write_callback, flush_callback);
  png_set_compression_level(png_ptr, args.zlib_level);
  png_set_IHDR(png_ptr, info_ptr, static_cast<png_uint_32>(args.width), static_cast<png_uint_32>(args.height),
               args.bit_depth, args.color_type, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  if (!args.palette.empty()) {
    png_set_PLTE(png_ptr, info_ptr, args.palette.data(), static_cast<int>(args.palette.size()));
  }
  if (args.text) {
    for (std::size_t i = 0; i < args.text->size(); ++i) {
      text_entries[i].compression = PNG_TEXT_COMPRESSION_NONE;
      text_entries[i].key = const_cast<char*>((*args.text)[i].first.c_str());
      text_entries[i].text = const_cast<char*>((*args.text)[i].second.c_str());
    }
    if (!text_entries.empty()) {
      png_set_text(png_ptr, info_ptr, text_entries.data(), static_cast<int>(text_entries.size()));
    }
  }
  png_write_info(png_ptr, info_ptr);
  if (args.bit_depth == 16) png_set_swap(png_ptr);
  png_write_image(png_ptr, args.rows.data());
  png_write_end(png_ptr, nullptr);
  png_destroy_write_struct(&png_ptr, &info_ptr);
  return true;
}

enum class Want { kRgb8, kGray };

struct Decoded {
  int width = 0;
  int height = 0;
  int bit_depth = 8;
  int color_type = 0;
  std::vector<std::uint8_t> pixels;
  TextChunks text;
};

bool read_png(std::span<const std::uint8_t> data, Want want, Decoded& out, std::string& error) {
  if (data.size() < 8 || png_sig_cmp(data.data(), 0, 8) != 0) {
    error = "not a PNG stream";
    return false;
  }
  ReadCursor cursor{data, 0};
  std::vector<png_bytep> rows;
  png_structp png_ptr = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, warning_callback);
  if (!png_ptr) {
    error = "png_create_read_struct failed";
    return false;
  }
  png_infop info_ptr = png_create_info_struct(png_ptr);
  if (!info_ptr || setjmp(png_jmpbuf(png_ptr))) {
    png_destroy_read_struct(&png_ptr, info_ptr ? &info_ptr : nullptr, nullptr);
    error = "corrupt or truncated PNG stream";
    return false;
  }
  png_set_read_fn(png_ptr, &cursor, read_callback);
  png_read_info(png_ptr, info_ptr);

  out.width = static_cast<int>(png_get_image_width(png_ptr, info_ptr));
  out.height = static_cast<int>(png_get_image_height(png_ptr, info_ptr));
  out.color_type = png_get_color_type(png_ptr, info_ptr);
  out.bit_depth = png_get_bit_depth(png_ptr, info_ptr);

  png_textp text_ptr = nullptr;
  int num_text = 0;
  if (png_get_text(png_ptr, info_ptr, &text_ptr, &num_text) > 0) {
    for (int i = 0; i < num_text; ++i) out.text.emplace_back(text_ptr[i].key, text_ptr[i].text ? text_ptr[i].text : "");
  }

  std::size_t channels = 3;
  std::size_t sample_bytes = 1;
  if (want == Want::kRgb8) {
    png_set_expand(png_ptr);
    png_set_strip_16(png_ptr);
    png_set_strip_alpha(png_ptr);
    png_set_gray_to_rgb(png_ptr);
    out.bit_depth = 8;
  } else {
    if (out.color_type != PNG_COLOR_TYPE_GRAY) {
      png_destroy_read_struct(&png_ptr, &info_ptr, nullptr);
      error = "expected a grayscale PNG";
      return false;
    }
    channels = 1;
    if (out.bit_depth < 8) {
      png_set_expand_gray_1_2_4_to_8(png_ptr);
      out.bit_depth = 8;
    }
    if (out.bit_depth == 16) {
      png_set_swap(png_ptr);
      sample_bytes = 2;
    }
  }
  png_read_update_info(png_ptr, info_ptr);
  const std::size_t stride = static_cast<std::size_t>(out.width) * channels * sample_bytes;
  if (png_get_rowbytes(png_ptr, info_ptr) != stride) {
    png_destroy_read_struct(&png_ptr, &info_ptr, nullptr);
    error = "unexpected PNG row layout";
    return false;
  }
  out.pixels.resize(stride * static_cast<std::size_t>(out.height));
  rows.resize(static_cast<std::size_t>(out.height));
  for (int y = 0; y < out.height; ++y) rows[static_cast<std::size_t>(y)] = out.pixels.data() + stride * static_cast<std::size_t>(y);
  png_read_image(png_ptr, rows.data());
  png_read_end(png_ptr, nullptr);
  png_destroy_read_struct(&png_ptr, &info_ptr, nullptr);
  return true;
}

/// Packs `img` as palette indices when it has at most 256 colours, using the
/// smallest bit depth that holds the palette. Returns false otherwise.
bool pack_palette(const RgbImage& img, WriteArgs& args, Bytes& packed) {
  std::unordered_map<std::uint32_t, std::uint8_t> index;
  std::vector<std::uint8_t> indices(img.pixel_count());
  const auto px = img.bytes();
  for (std::size_t i = 0; i < indices.size(); ++i) {
    const std::uint32_t key = (std::uint32_t{px[3 * i]} << 16) | (std::uint32_t{px[3 * i + 1]} << 8) | px[3 * i + 2];
    auto it = index.find(key);
    if (it == index.end()) {
      if (index.size() == 256) return false;
      it = index.emplace(key, static_cast<std::uint8_t>(index.size())).first;
      args.palette.push_back(png_color{px[3 * i], px[3 * i + 1], px[3 * i + 2]});
    }
    indices[i] = it->second;
  }
  const std::size_t n = args.palette.size();
  const int depth = n <= 2 ? 1 : n <= 4 ? 2 : n <= 16 ? 4 : 8;
  const auto w = static_cast<std::size_t>(img.width());
  const std::size_t stride = (w * static_cast<std::size_t>(depth) + 7) / 8;
  packed.assign(stride * static_cast<std::size_t>(img.height()), 0);
  for (int y = 0; y < img.height(); ++y) {
    std::uint8_t* row = packed.data() + stride * static_cast<std::size_t>(y);
    for (std::size_t x = 0; x < w; ++x) {
      const std::size_t bit = x * static_cast<std::size_t>(depth);
      row[bit / 8] |= static_cast<std::uint8_t>(indices[static_cast<std::size_t>(y) * w + x] << (8 - depth - bit % 8));
    }
    args.rows.push_back(row);
  }
  args.bit_depth = depth;
  args.color_type = PNG_COLOR_TYPE_PALETTE;
  return true;
}

}  // namespace

Bytes encode_rgb(const RgbImage& img, int zlib_level) {
  if (img.empty()) fail(ErrorCode::kInvalidDimensions, "cannot encode an empty image as PNG");
  Bytes out;
  Bytes packed;
  WriteArgs args{img.width(), img.height(), 8, PNG_COLOR_TYPE_RGB, zlib_level, nullptr, {}, {}, {}};
  if (!pack_palette(img, args, packed)) {
    args.palette.clear();
    args.rows.resize(static_cast<std::size_t>(img.height()));
    for (int y = 0; y < img.height(); ++y) args.rows[static_cast<std::size_t>(y)] = const_cast<png_bytep>(img.row(y));
  }
  std::string error;
  if (!write_png(args, out, error)) fail(ErrorCode::kEncodeFailure, error);
  return out;
}

RgbImage decode_rgb(std::span<const std::uint8_t> data) {
  Decoded d;
  std::string error;
  if (!read_png(data, Want::kRgb8, d, error)) fail(ErrorCode::kDecodeFailure, error);
  RgbImage img(d.width, d.height);
  std::memcpy(img.bytes().data(), d.pixels.data(), d.pixels.size());
  return img;
}

std::optional<std::string> GrayImage::find_text(std::string_view key) const {
  for (const auto& [k, v] : text) {
    if (k == key) return v;
  }
  return std::nullopt;
}

Bytes encode_gray(const GrayImage& img, int zlib_level) {
  if (img.width <= 0 || img.height <= 0) fail(ErrorCode::kInvalidDimensions, "cannot encode an empty image as PNG");
  if (img.bit_depth != 8 && img.bit_depth != 16) fail(ErrorCode::kInvalidArgument, "gray PNG bit depth must be 8 or 16");
  if (img.samples.size() != static_cast<std::size_t>(img.width) * static_cast<std::size_t>(img.height)) {
    fail(ErrorCode::kDimensionMismatch, "sample count does not match dimensions");
  }
  const std::size_t bytes_per = img.bit_depth == 16 ? 2 : 1;
  std::vector<std::uint8_t> packed(img.samples.size() * bytes_per);
  for (std::size_t i = 0; i < img.samples.size(); ++i) {
    if (bytes_per == 1) {
      packed[i] = static_cast<std::uint8_t>(img.samples[i]);
    } else {
      std::memcpy(&packed[2 * i], &img.samples[i], 2);  // host order; png_set_swap fixes it up
    }
  }
  WriteArgs args{img.width, img.height, img.bit_depth, PNG_COLOR_TYPE_GRAY, zlib_level, &img.text, {}, {}, {}};
  const std::size_t stride = static_cast<std::size_t>(img.width) * bytes_per;
  args.rows.resize(static_cast<std::size_t>(img.height));
  for (int y = 0; y < img.height; ++y) args.rows[static_cast<std::size_t>(y)] = packed.data() + stride * static_cast<std::size_t>(y);
  Bytes out;
  std::string error;
  if (!write_png(args, out, error)) fail(ErrorCode::kEncodeFailure, error);
  return out;
}

GrayImage decode_gray(std::span<const std::uint8_t> data) {
  Decoded d;
  std::string error;
  if (!read_png(data, Want::kGray, d, error)) fail(ErrorCode::kDimensionMismatch, error);
  GrayImage img;
  img.width = d.width;
  img.height = d.height;
  img.bit_depth = d.bit_depth;
  img.text = std::move(d.text);
  const std::size_t n = static_cast<std::size_t>(d.width) * static_cast<std::size_t>(d.height);
  img.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (d.bit_depth == 16) {
      std::uint16_t v;
      std::memcpy(&v, &d.pixels[2 * i], 2);
      img.samples[i] = v;
    } else {
      img.samples[i] = d.pixels[i];
    }
  }
  return img;
}

}  // namespace slimslide::png
