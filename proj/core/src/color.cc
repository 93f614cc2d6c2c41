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

#include "lesionseek/color.h"

#include <array>
#include <cmath>

namespace lesionseek {
namespace {

// IEC 61966-2-1 linear-sRGB to XYZ (D65).
constexpr double kM[3][3] = {
    {0.4124564, 0.3575761, 0.1804375},
    {0.2126729, 0.7151522, 0.0721750},
    {0.0193339, 0.1191920, 0.9503041},
};

// Reference white as the image of linear (1, 1, 1), so white maps to a*=b*=0.
constexpr double kXn = kM[0][0] + kM[0][1] + kM[0][2];
constexpr double kYn = kM[1][0] + kM[1][1] + kM[1][2];
constexpr double kZn = kM[2][0] + kM[2][1] + kM[2][2];

const std::array<double, 256>& LinearTable() {
  static const std::array<double, 256> table = [] {
    std::array<double, 256> t{};
    for (int i = 0; i < 256; ++i) {
      const double c = i / 255.0;
      t[i] = c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
    }
    return t;
  }();
  return table;
}

double LabF(double t) {
  constexpr double kDelta = 6.0 / 29.0;
  constexpr double kDelta3 = kDelta * kDelta * kDelta;
  return t > kDelta3 ? std::cbrt(t) : t / (3.0 * kDelta * kDelta) + 4.0 / 29.0;
}

}  // namespace

Lab RgbToLab(Rgb rgb) {
  const auto& lin = LinearTable();
  const double r = lin[rgb.r];
  const double g = lin[rgb.g];
  const double b = lin[rgb.b];
  const double x = kM[0][0] * r + kM[0][1] * g + kM[0][2] * b;
  const double y = kM[1][0] * r + kM[1][1] * g + kM[1][2] * b;
  const double z = kM[2][0] * r + kM[2][1] * g + kM[2][2] * b;
  const double fx = LabF(x / kXn);
  const double fy = LabF(y / kYn);
  const double fz = LabF(z / kZn);
  return Lab{116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)};
}

}  // namespace lesionseek
