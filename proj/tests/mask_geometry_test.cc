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

#include "lesionseek/mask_geometry.h"

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "lesionseek/errors.h"
#include "test_util.h"

namespace lesionseek {
namespace {

using testing::BruteFeret;
using testing::DiskMask;
using testing::RectMask;

struct Moments {
  double area = 0, cr = 0, cc = 0, mrr = 0, mcc = 0, mrc = 0;
};

Moments BruteMoments(const BinaryMask& m) {
  Moments o;
  for (int r = 0; r < m.height(); ++r) {
    for (int c = 0; c < m.width(); ++c) {
      if (!m(r, c)) continue;
      o.area += 1;
      o.cr += r;
      o.cc += c;
    }
  }
  o.cr /= o.area;
  o.cc /= o.area;
  for (int r = 0; r < m.height(); ++r) {
    for (int c = 0; c < m.width(); ++c) {
      if (!m(r, c)) continue;
      o.mrr += (r - o.cr) * (r - o.cr);
      o.mcc += (c - o.cc) * (c - o.cc);
      o.mrc += (r - o.cr) * (c - o.cc);
    }
  }
  o.mrr /= o.area;
  o.mcc /= o.area;
  o.mrc /= o.area;
  return o;
}

TEST(MaskGeometry, SinglePixel) {
  BinaryMask m(3, 3);
  m.Set(1, 2, true);
  const MaskGeometry g = ComputeMaskGeometry(m);
  EXPECT_EQ(g.area_px, 1u);
  EXPECT_DOUBLE_EQ(g.centroid_row, 1.0);
  EXPECT_DOUBLE_EQ(g.centroid_col, 2.0);
  EXPECT_DOUBLE_EQ(g.max_feret_px, 0.0);
  EXPECT_GE(g.perimeter_px * g.perimeter_px,
            4 * std::numbers::pi * g.area_px * (1 - 1e-6));
}

TEST(MaskGeometry, EmptyMaskIsAnError) {
  BinaryMask m(4, 4);
  try {
    ComputeMaskGeometry(m);
    FAIL() << "expected an error";
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("empty lesion mask"), std::string::npos);
  }
}

TEST(MaskGeometry, DiskRadius40AgainstBruteForce) {
  const BinaryMask m = DiskMask(101, 50, 50, 40);
  const MaskGeometry g = ComputeMaskGeometry(m);
  EXPECT_EQ(g.area_px, m.CountSet());
  EXPECT_NEAR(static_cast<double>(g.area_px), std::numbers::pi * 1600, 0.01 * std::numbers::pi * 1600);
  const double feret = BruteFeret(m);
  EXPECT_NEAR(g.max_feret_px, feret, 1e-9);
  EXPECT_NEAR(g.max_feret_px, 80.0, 0.02 * 80.0);
  EXPECT_NEAR(g.centroid_row, 50.0, 1e-9);
  EXPECT_NEAR(g.centroid_col, 50.0, 1e-9);
  EXPECT_NEAR(g.perimeter_px, 2 * std::numbers::pi * 40, 0.03 * 2 * std::numbers::pi * 40);
  EXPECT_LE(g.ellipse_minor_px, g.ellipse_major_px);
  EXPECT_LE(g.ellipse_major_px, g.max_feret_px * 1.01);
}

TEST(MaskGeometry, RectangleEllipseMatchesMoments) {
  const BinaryMask m = RectMask(40, 80, 10, 10, 20, 60);
  const MaskGeometry g = ComputeMaskGeometry(m);
  const Moments mo = BruteMoments(m);
  const double tr = mo.mrr + mo.mcc;
  const double det = mo.mrr * mo.mcc - mo.mrc * mo.mrc;
  const double disc = std::sqrt(tr * tr / 4 - det);
  EXPECT_NEAR(g.ellipse_major_px, 4 * std::sqrt(tr / 2 + disc), 1e-9);
  EXPECT_NEAR(g.ellipse_minor_px, 4 * std::sqrt(tr / 2 - disc), 1e-9);
  EXPECT_NEAR(g.ellipse_major_px / g.ellipse_minor_px, 3.0, 0.03 * 3.0);
  EXPECT_NEAR(g.centroid_row, mo.cr, 1e-12);
  EXPECT_NEAR(g.centroid_col, mo.cc, 1e-12);
  EXPECT_NEAR(g.max_feret_px, BruteFeret(m), 1e-9);
}

TEST(MaskGeometry, IsoperimetricBoundHoldsOnRandomShapes) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    BinaryMask m(40, 40);
    std::bernoulli_distribution coin(0.5);
    for (int r = 5; r < 35; ++r) {
      for (int c = 5; c < 35; ++c) m.Set(r, c, coin(rng));
    }
    const MaskGeometry g = ComputeMaskGeometry(m);
    EXPECT_GE(g.perimeter_px * g.perimeter_px,
              4 * std::numbers::pi * g.area_px * (1 - 1e-6));
    EXPECT_NEAR(g.max_feret_px, BruteFeret(m), 1e-9);
    EXPECT_LE(g.ellipse_minor_px, g.ellipse_major_px);
  }
}

TEST(ChainCode, SquareContour) {
  // A 10x10 block: the boundary-center contour is a 9x9 square traced with
  // 36 orthogonal steps.
  const BinaryMask m = RectMask(20, 20, 5, 5, 10, 10);
  EXPECT_NEAR(ChainCodeContourLength(m), 36 * kOrthogonalStep, 1e-9);
}

TEST(ChainCode, DiagonalLine) {
  BinaryMask m(10, 10);
  for (int i = 2; i < 7; ++i) m.Set(i, i, true);
  // Out along the diagonal and back: 8 diagonal steps.
  EXPECT_NEAR(ChainCodeContourLength(m), 8 * kDiagonalStep, 1e-9);
}

TEST(SquaredDistance, MatchesBruteForce) {
  std::mt19937_64 rng(9);
  BinaryMask m(23, 31);
  std::bernoulli_distribution coin(0.08);
  for (int r = 0; r < 23; ++r) {
    for (int c = 0; c < 31; ++c) m.Set(r, c, coin(rng));
  }
  m.Set(11, 15, true);
  const std::vector<double> d = SquaredDistanceToLesion(m);
  for (int r = 0; r < 23; ++r) {
    for (int c = 0; c < 31; ++c) {
      double best = 1e300;
      for (int rr = 0; rr < 23; ++rr) {
        for (int cc = 0; cc < 31; ++cc) {
          if (m(rr, cc)) {
            best = std::min(best, double((rr - r) * (rr - r) + (cc - c) * (cc - c)));
          }
        }
      }
      EXPECT_EQ(d[static_cast<std::size_t>(r) * 31 + c], best) << r << "," << c;
    }
  }
}

}  // namespace
}  // namespace lesionseek
