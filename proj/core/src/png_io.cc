// Copyright 2026 The LesionSeek Authors.
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

#include "lesionseek/png_io.h"

#include <png.h>

#include <cstdio>
#include <memory>
#include <vector>

#include "lesionseek/errors.h"

namespace lesionseek {
namespace {

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f != nullptr) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr Open(const std::filesystem::path& path, const char* mode) {
  FilePtr f(std::fopen(path.c_str(), mode));
  if (!f) {
    throw DataError("cannot open " + path.string());
  }
  return f;
}

struct Decoded {
  int height = 0;
  int width = 0;
  int channels = 0;
  std::vector<std::uint8_t> data;
};

// Decodes to 8-bit gray (channels=1) or RGB (channels=3).
Decoded Decode(const std::filesystem::path& path, bool want_gray) {
  FilePtr file = Open(path, "rb");
  png_byte header[8];
  if (std::fread(header, 1, 8, file.get()) != 8 || png_sig_cmp(header, 0, 8)) {
    throw DataError(path.string() + ": not a PNG file");
  }
  png_structp png =
      png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (png == nullptr) throw DataError("png_create_read_struct failed");
  png_infop info = png_create_info_struct(png);
  if (info == nullptr) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw DataError("png_create_info_struct failed");
  }
  Decoded out;
  std::vector<png_bytep> rows;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw DataError(path.string() + ": PNG decode error");
  }
  png_init_io(png, file.get());
  png_set_sig_bytes(png, 8);
  png_read_info(png, info);

  const png_byte color_type = png_get_color_type(png, info);
  const png_byte bit_depth = png_get_bit_depth(png, info);
  if (bit_depth == 16) png_set_strip_16(png);
  if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) {
    png_set_expand_gray_1_2_4_to_8(png);
  }
  if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
  if (color_type & PNG_COLOR_MASK_ALPHA || png_get_valid(png, info, PNG_INFO_tRNS)) {
    png_set_strip_alpha(png);
  }
  const bool is_gray = (color_type & PNG_COLOR_MASK_COLOR) == 0;
  if (want_gray && !is_gray) {
    png_set_rgb_to_gray_fixed(png, 1, -1, -1);
  } else if (!want_gray && is_gray) {
    png_set_gray_to_rgb(png);
  }
  png_read_update_info(png, info);

  out.width = static_cast<int>(png_get_image_width(png, info));
  out.height = static_cast<int>(png_get_image_height(png, info));
  out.channels = png_get_channels(png, info);
  const std::size_t stride = png_get_rowbytes(png, info);
  out.data.resize(stride * out.height);
  rows.resize(out.height);
  for (int r = 0; r < out.height; ++r) rows[r] = out.data.data() + r * stride;
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  if (out.channels != (want_gray ? 1 : 3)) {
    throw DataError(path.string() + ": unsupported PNG layout");
  }
  return out;
}

void Encode(const std::filesystem::path& path, int height, int width,
            int color_type, const std::uint8_t* data, std::size_t stride) {
  FilePtr file = Open(path, "wb");
  png_structp png =
      png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (png == nullptr) throw DataError("png_create_write_struct failed");
  png_infop info = png_create_info_struct(png);
  if (info == nullptr) {
    png_destroy_write_struct(&png, nullptr);
    throw DataError("png_create_info_struct failed");
  }
  std::vector<png_bytep> rows(height);
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw DataError(path.string() + ": PNG encode error");
  }
  png_init_io(png, file.get());
  png_set_IHDR(png, info, width, height, 8, color_type, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (int r = 0; r < height; ++r) {
    rows[r] = const_cast<png_bytep>(data + r * stride);
  }
  png_write_image(png, rows.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

}  // namespace

RgbImage ReadRgbPng(const std::filesystem::path& path) {
  Decoded d = Decode(path, /*want_gray=*/false);
  std::vector<Rgb> pixels(static_cast<std::size_t>(d.height) * d.width);
  for (std::size_t i = 0; i < pixels.size(); ++i) {
    pixels[i] = Rgb{d.data[3 * i], d.data[3 * i + 1], d.data[3 * i + 2]};
  }
  return RgbImage(d.height, d.width, std::move(pixels));
}

void WriteRgbPng(const std::filesystem::path& path, const RgbImage& image) {
  static_assert(sizeof(Rgb) == 3);
  Encode(path, image.height(), image.width(), PNG_COLOR_TYPE_RGB,
         reinterpret_cast<const std::uint8_t*>(image.pixels().data()),
         static_cast<std::size_t>(image.width()) * 3);
}

BinaryMask ReadMaskPng(const std::filesystem::path& path) {
  Decoded d = Decode(path, /*want_gray=*/true);
  return BinaryMask(d.height, d.width, std::move(d.data));
}

void WriteMaskPng(const std::filesystem::path& path, const BinaryMask& mask) {
  std::vector<std::uint8_t> gray(mask.cells().begin(), mask.cells().end());
  for (auto& g : gray) g = g ? 255 : 0;
  Encode(path, mask.height(), mask.width(), PNG_COLOR_TYPE_GRAY, gray.data(),
         static_cast<std::size_t>(mask.width()));
}

}  // namespace lesionseek
