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

#ifndef LESIONSEEK_ATTRIBUTE_ORACLE_H_
#define LESIONSEEK_ATTRIBUTE_ORACLE_H_

#include "lesionseek/attribute.h"
#include "lesionseek/lesion_image.h"

namespace lesionseek {

// Number of angular sectors used for radial_color_std_max.
inline constexpr int kColorSectors = 8;

// Computes all sixteen attributes of `image`.
//
// Geometry attributes depend only on the mask and the scale:
//   areaMM2                 lesion pixel count * scale^2
//   perimeterMM             smoothed contour length * scale
//   minorAxisMM             moment-ellipse minor axis * scale, capped at the
//                           maximum Feret diameter
//   clin_size_long_diam_mm  maximum Feret diameter * scale
//   norm_border             1 - 4*pi*area_px / perimeter_px^2 in [0, 1)
//   area_perim_ratio        perimeterMM / areaMM2
// Colour attributes are computed in CIELAB and depend only on the pixels
// (given the mask):
//   A, B / Aext, Bext       mean a*, b* inside / outside the lesion
//   deltaL, deltaB          mean inside minus mean outside of L*, b*
//   deltaLB                 mean L* inside minus mean L* over the exterior
//                           ring within max(2, 0.2 * r_eq) px of the lesion
//   stdLExt                 population std of L* outside the lesion
//   norm_color              norm of the per-channel interior std devs
//   radial_color_std_max    max over channels of the std of the per-sector
//                           mean colour (8 sectors about the centroid)
//
// Throws DataError for invalid images and for lesions touching the image
// border ("lesion not fully contained").
AttributeVector ComputeAttributes(const LesionImage& image);

}  // namespace lesionseek

#endif  // LESIONSEEK_ATTRIBUTE_ORACLE_H_
