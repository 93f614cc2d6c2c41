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

#ifndef LESIONSEEK_MASK_GEOMETRY_H_
#define LESIONSEEK_MASK_GEOMETRY_H_

#include <cstddef>
#include <vector>

#include "lesionseek/lesion_image.h"

namespace lesionseek {

// Shape measurements of a binary lesion mask, in pixel units. Pixel (r, c)
// is the unit square centred on (r, c).
struct MaskGeometry {
  std::size_t area_px = 0;
  // Smoothed outer contour length, floored at the isoperimetric bound
  // sqrt(4*pi*area_px).
  double perimeter_px = 0.0;
  double centroid_row = 0.0;
  double centroid_col = 0.0;
  // Full axis lengths of the ellipse with the mask's second central moments.
  double ellipse_major_px = 0.0;
  double ellipse_minor_px = 0.0;
  // Largest distance between centres of boundary pixels.
  double max_feret_px = 0.0;
};

// Throws DataError("empty lesion mask") if no pixel is set.
MaskGeometry ComputeMaskGeometry(const BinaryMask& mask);

// Weighted chain-code length of the outer contour of every 8-connected
// component: 0.948 per orthogonal step, 1.340 per diagonal step.
double ChainCodeContourLength(const BinaryMask& mask);

inline constexpr double kOrthogonalStep = 0.948;
inline constexpr double kDiagonalStep = 1.340;

// Exact squared Euclidean distance from every pixel centre to the nearest
// lesion pixel centre (0 inside the lesion), row-major. Requires a
// non-empty mask.
std::vector<double> SquaredDistanceToLesion(const BinaryMask& mask);

}  // namespace lesionseek

#endif  // LESIONSEEK_MASK_GEOMETRY_H_
