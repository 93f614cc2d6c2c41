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

#include <string>

#include <gtest/gtest.h>

namespace lesionseek {
namespace {

struct LabCase {
  Rgb rgb;
  double l, a, b;
};

void ExpectLab(const LabCase& c, double tol) {
  const Lab lab = RgbToLab(c.rgb);
  SCOPED_TRACE(std::to_string(c.rgb.r) + "," + std::to_string(c.rgb.g) + "," +
               std::to_string(c.rgb.b));
  EXPECT_NEAR(lab.l, c.l, tol);
  EXPECT_NEAR(lab.a, c.a, tol);
  EXPECT_NEAR(lab.b, c.b, tol);
}

// Independent reference with the same constants: IEC 61966-2-1 matrix,
// reference white = M * (1, 1, 1).
TEST(RgbToLab, MatchesReferenceColorimetry) {
  const LabCase cases[] = {
      {{255, 0, 0}, 53.240791833281, 80.0924695448, 67.203192536497},
      {{0, 255, 0}, 87.734718894974, -86.182701516121, 83.179314540933},
      {{0, 0, 255}, 32.29700932295, 79.187526784347, -107.86016452984},
      {{120, 80, 70}, 38.15189232032, 15.455737226395, 12.716193021982},
      {{200, 170, 150}, 71.712382793631, 7.836573871242, 14.366790360218},
      {{10, 20, 30}, 5.9485243643303, -0.66872303334636, -8.1374698773391},
  };
  for (const LabCase& c : cases) ExpectLab(c, 2e-3);
}

// A reference using the rounded matrix and tabulated D65 white
// (0.95047, 1, 1.08883). The conventions disagree by a few thousandths in b*.
TEST(RgbToLab, CloseToTabulatedWhiteConvention) {
  const LabCase cases[] = {
      {{255, 0, 0}, 53.2405879437449, 80.0923082256922, 67.2027510444287},
      {{0, 255, 0}, 87.73509948831895, -86.18302974439501, 83.17970317538452},
      {{0, 0, 255}, 32.29567256501351, 79.18559091176556, -107.85730020669489},
      {{120, 80, 70}, 38.15187662708518, 15.45494574231121, 12.71790676487562},
      {{200, 170, 150}, 71.71239979089947, 7.835082245742086, 14.36983417777602},
      {{10, 20, 30}, 5.94847037984805, -0.6693107906908108, -8.136411786792259},
  };
  for (const LabCase& c : cases) ExpectLab(c, 1e-2);
}

TEST(RgbToLab, WhiteAndBlackReferencePoints) {
  const Lab white = RgbToLab({255, 255, 255});
  EXPECT_NEAR(white.l, 100.0, 1e-3);
  EXPECT_NEAR(white.a, 0.0, 1e-3);
  EXPECT_NEAR(white.b, 0.0, 1e-3);
  const Lab black = RgbToLab({0, 0, 0});
  EXPECT_NEAR(black.l, 0.0, 1e-3);
  EXPECT_NEAR(black.a, 0.0, 1e-3);
  EXPECT_NEAR(black.b, 0.0, 1e-3);
}

TEST(RgbToLab, GraysAreNeutralAndLightnessIsMonotone) {
  double prev = -1.0;
  for (int v = 0; v <= 255; ++v) {
    const auto g = static_cast<std::uint8_t>(v);
    const Lab lab = RgbToLab({g, g, g});
    EXPECT_NEAR(lab.a, 0.0, 1e-9);
    EXPECT_NEAR(lab.b, 0.0, 1e-9);
    EXPECT_GT(lab.l, prev);
    EXPECT_LE(lab.l, 100.0 + 1e-9);
    prev = lab.l;
  }
  EXPECT_NEAR(RgbToLab({128, 128, 128}).l, 53.585, 2e-3);
}

TEST(Grayscale, UsesRec601Weights) {
  EXPECT_DOUBLE_EQ(Grayscale({255, 255, 255}), 255.0);
  EXPECT_DOUBLE_EQ(Grayscale({100, 0, 0}), 29.9);
}

}  // namespace
}  // namespace lesionseek
