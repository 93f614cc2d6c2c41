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

#include "lesionseek/lesion_image.h"

#include <algorithm>
#include <cmath>

#include "lesionseek/errors.h"

namespace lesionseek {
namespace {

std::size_t CellCount(int height, int width) {
  if (height < 0 || width < 0) {
    throw InvalidArgumentError("negative raster dimensions");
  }
  return static_cast<std::size_t>(height) * static_cast<std::size_t>(width);
}

}  // namespace

BinaryMask::BinaryMask(int height, int width)
    : height_(height), width_(width), cells_(CellCount(height, width), 0) {}

BinaryMask::BinaryMask(int height, int width, std::vector<std::uint8_t> cells)
    : height_(height), width_(width), cells_(std::move(cells)) {
  if (cells_.size() != CellCount(height, width)) {
    throw InvalidArgumentError("mask cell count does not match dimensions");
  }
  for (auto& c : cells_) c = c != 0 ? 1 : 0;
}

std::size_t BinaryMask::CountSet() const {
  return static_cast<std::size_t>(
      std::count(cells_.begin(), cells_.end(), std::uint8_t{1}));
}

RgbImage::RgbImage(int height, int width, Rgb fill)
    : height_(height), width_(width), pixels_(CellCount(height, width), fill) {}

RgbImage::RgbImage(int height, int width, std::vector<Rgb> pixels)
    : height_(height), width_(width), pixels_(std::move(pixels)) {
  if (pixels_.size() != CellCount(height, width)) {
    throw InvalidArgumentError("pixel count does not match dimensions");
  }
}

void ValidateLesionImage(const LesionImage& image) {
  const auto& id = image.image_id;
  if (image.mask.height() != image.pixels.height() ||
      image.mask.width() != image.pixels.width()) {
    throw DataError("image " + id + ": mask dimensions differ from pixels");
  }
  const std::size_t lesion = image.mask.CountSet();
  if (lesion == 0) {
    throw DataError("image " + id + ": empty lesion mask");
  }
  if (lesion == image.mask.cells().size()) {
    throw DataError("image " + id + ": mask has no background pixels");
  }
  if (!(image.scale_mm_per_px > 0.0) || !std::isfinite(image.scale_mm_per_px)) {
    throw DataError("image " + id + ": scale_mm_per_px must be positive");
  }
}

LesionImage RotateClockwise(const LesionImage& image) {
  const int h = image.pixels.height();
  const int w = image.pixels.width();
  LesionImage out;
  out.image_id = image.image_id;
  out.patient_id = image.patient_id;
  out.scale_mm_per_px = image.scale_mm_per_px;
  out.pixels = RgbImage(w, h);
  out.mask = BinaryMask(image.mask.width(), image.mask.height());
  // (r, c) -> (c, h - 1 - r)
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      out.pixels(c, h - 1 - r) = image.pixels(r, c);
    }
  }
  for (int r = 0; r < image.mask.height(); ++r) {
    for (int c = 0; c < image.mask.width(); ++c) {
      out.mask.Set(c, image.mask.height() - 1 - r, image.mask(r, c));
    }
  }
  return out;
}

}  // namespace lesionseek
