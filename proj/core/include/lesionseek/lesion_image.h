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

#ifndef LESIONSEEK_LESION_IMAGE_H_
#define LESIONSEEK_LESION_IMAGE_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace lesionseek {

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  friend bool operator==(const Rgb&, const Rgb&) = default;
};

// Row-major boolean grid; true marks lesion pixels.
class BinaryMask {
 public:
  BinaryMask() = default;
  BinaryMask(int height, int width);
  // `cells` holds height*width bytes; any nonzero byte is a lesion pixel.
  BinaryMask(int height, int width, std::vector<std::uint8_t> cells);

  int height() const { return height_; }
  int width() const { return width_; }

  bool operator()(int row, int col) const {
    return cells_[static_cast<std::size_t>(row) * width_ + col] != 0;
  }
  // Out-of-bounds coordinates read as background.
  bool At(int row, int col) const {
    return row >= 0 && col >= 0 && row < height_ && col < width_ &&
           (*this)(row, col);
  }
  void Set(int row, int col, bool value) {
    cells_[static_cast<std::size_t>(row) * width_ + col] = value ? 1 : 0;
  }

  std::size_t CountSet() const;
  std::span<const std::uint8_t> cells() const { return cells_; }

  friend bool operator==(const BinaryMask&, const BinaryMask&) = default;

 private:
  int height_ = 0;
  int width_ = 0;
  std::vector<std::uint8_t> cells_;
};

// Row-major 8-bit RGB raster.
class RgbImage {
 public:
  RgbImage() = default;
  RgbImage(int height, int width, Rgb fill = {});
  RgbImage(int height, int width, std::vector<Rgb> pixels);

  int height() const { return height_; }
  int width() const { return width_; }

  const Rgb& operator()(int row, int col) const {
    return pixels_[static_cast<std::size_t>(row) * width_ + col];
  }
  Rgb& operator()(int row, int col) {
    return pixels_[static_cast<std::size_t>(row) * width_ + col];
  }

  std::span<const Rgb> pixels() const { return pixels_; }

  friend bool operator==(const RgbImage&, const RgbImage&) = default;

 private:
  int height_ = 0;
  int width_ = 0;
  std::vector<Rgb> pixels_;
};

struct LesionImage {
  std::string image_id;
  std::string patient_id;
  RgbImage pixels;
  BinaryMask mask;
  double scale_mm_per_px = 0.0;
};

// Throws DataError if mask and pixel dimensions differ, the mask lacks a
// lesion or a background pixel, or the scale is not positive.
void ValidateLesionImage(const LesionImage& image);

// Image and mask rotated 90 degrees clockwise; everything else copied.
LesionImage RotateClockwise(const LesionImage& image);

}  // namespace lesionseek

#endif  // LESIONSEEK_LESION_IMAGE_H_
