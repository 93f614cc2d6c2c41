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

#ifndef LESIONSEEK_COLOR_H_
#define LESIONSEEK_COLOR_H_

#include "lesionseek/lesion_image.h"

namespace lesionseek {

struct Lab {
  double l = 0.0;
  double a = 0.0;
  double b = 0.0;
};

// CIE L*a*b* of an 8-bit sRGB triple (sRGB companding, D65 white).
Lab RgbToLab(Rgb rgb);

// Rec. 601 luma in [0, 255].
inline double Grayscale(Rgb rgb) {
  return 0.299 * rgb.r + 0.587 * rgb.g + 0.114 * rgb.b;
}

}  // namespace lesionseek

#endif  // LESIONSEEK_COLOR_H_
