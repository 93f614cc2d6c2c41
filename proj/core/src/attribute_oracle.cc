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

#include "lesionseek/attribute_oracle.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <vector>

#include "lesionseek/color.h"
#include "lesionseek/errors.h"
#include "lesionseek/mask_geometry.h"

namespace lesionseek {
namespace {

struct ChannelStats {
  std::array<double, 3> mean{};
  std::array<double, 3> sd{};  // population
  std::size_t count = 0;
};

// Sums are taken relative to the first included sample so that constant
// data yields exactly zero spread.
template <typename Pred>
ChannelStats Stats(const std::vector<Lab>& lab, Pred include) {
  ChannelStats s;
  std::array<double, 3> ref{};
  std::array<double, 3> sum{};
  for (std::size_t i = 0; i < lab.size(); ++i) {
    if (!include(i)) continue;
    if (s.count == 0) ref = {lab[i].l, lab[i].a, lab[i].b};
    sum[0] += lab[i].l - ref[0];
    sum[1] += lab[i].a - ref[1];
    sum[2] += lab[i].b - ref[2];
    ++s.count;
  }
  if (s.count == 0) return s;
  const double n = static_cast<double>(s.count);
  std::array<double, 3> shift{};
  for (int ch = 0; ch < 3; ++ch) shift[ch] = sum[ch] / n;
  std::array<double, 3> ss{};
  for (std::size_t i = 0; i < lab.size(); ++i) {
    if (!include(i)) continue;
    const double d0 = (lab[i].l - ref[0]) - shift[0];
    const double d1 = (lab[i].a - ref[1]) - shift[1];
    const double d2 = (lab[i].b - ref[2]) - shift[2];
    ss[0] += d0 * d0;
    ss[1] += d1 * d1;
    ss[2] += d2 * d2;
  }
  for (int ch = 0; ch < 3; ++ch) {
    s.mean[ch] = ref[ch] + shift[ch];
    s.sd[ch] = std::sqrt(ss[ch] / n);
  }
  return s;
}

// Sector k covers polar angles [k*45deg, (k+1)*45deg) of (x, y). Uses exact
// integer arithmetic so a 90-degree rotation of the input shifts every
// pixel by exactly two sectors.
int Octant(std::int64_t x, std::int64_t y) {
  if (x == 0 && y == 0) return 0;
  int quadrant = 0;
  while (!(x > 0 && y >= 0)) {
    const std::int64_t t = x;
    x = y;
    y = -t;
    ++quadrant;
  }
  return 2 * quadrant + (y >= x ? 1 : 0);
}

bool TouchesBorder(const BinaryMask& mask) {
  const int h = mask.height();
  const int w = mask.width();
  for (int c = 0; c < w; ++c) {
    if (mask(0, c) || mask(h - 1, c)) return true;
  }
  for (int r = 0; r < h; ++r) {
    if (mask(r, 0) || mask(r, w - 1)) return true;
  }
  return false;
}

double RadialColorStdMax(const LesionImage& image, const std::vector<Lab>& lab) {
  const BinaryMask& mask = image.mask;
  const int w = mask.width();
  std::int64_t n = 0;
  std::int64_t sum_r = 0;
  std::int64_t sum_c = 0;
  for (int r = 0; r < mask.height(); ++r) {
    for (int c = 0; c < w; ++c) {
      if (!mask(r, c)) continue;
      ++n;
      sum_r += r;
      sum_c += c;
    }
  }
  std::array<std::array<double, 3>, kColorSectors> sums{};
  std::array<std::int64_t, kColorSectors> counts{};
  // Colours are accumulated relative to one lesion pixel so a uniform lesion
  // gives exactly equal sector means.
  Lab ref;
  bool have_ref = false;
  for (int r = 0; r < mask.height(); ++r) {
    for (int c = 0; c < w; ++c) {
      if (!mask(r, c)) continue;
      // Offsets from the centroid, scaled by n to stay integral. Rows grow
      // downwards, so y is negated to keep the usual counter-clockwise sense.
      const std::int64_t x = n * c - sum_c;
      const std::int64_t y = sum_r - n * r;
      const int k = Octant(x, y);
      const Lab& p = lab[static_cast<std::size_t>(r) * w + c];
      if (!have_ref) {
        ref = p;
        have_ref = true;
      }
      sums[k][0] += p.l - ref.l;
      sums[k][1] += p.a - ref.a;
      sums[k][2] += p.b - ref.b;
      ++counts[k];
    }
  }
  std::vector<std::array<double, 3>> means;
  for (int k = 0; k < kColorSectors; ++k) {
    if (counts[k] == 0) continue;
    const double cnt = static_cast<double>(counts[k]);
    means.push_back({sums[k][0] / cnt, sums[k][1] / cnt, sums[k][2] / cnt});
  }
  if (means.size() < 2) return 0.0;
  double best = 0.0;
  const double m = static_cast<double>(means.size());
  for (int ch = 0; ch < 3; ++ch) {
    double mu = 0.0;
    for (const auto& s : means) mu += s[ch];
    mu /= m;
    double ss = 0.0;
    for (const auto& s : means) ss += (s[ch] - mu) * (s[ch] - mu);
    best = std::max(best, std::sqrt(ss / m));
  }
  return best;
}

}  // namespace

AttributeVector ComputeAttributes(const LesionImage& image) {
  ValidateLesionImage(image);
  const BinaryMask& mask = image.mask;
  if (TouchesBorder(mask)) {
    throw DataError("image " + image.image_id + ": lesion not fully contained");
  }

  const MaskGeometry geo = ComputeMaskGeometry(mask);
  const double scale = image.scale_mm_per_px;
  const double area_px = static_cast<double>(geo.area_px);

  std::vector<Lab> lab;
  lab.reserve(image.pixels.pixels().size());
  for (const Rgb& p : image.pixels.pixels()) lab.push_back(RgbToLab(p));

  const auto cells = mask.cells();
  const ChannelStats in =
      Stats(lab, [&](std::size_t i) { return cells[i] != 0; });
  const ChannelStats out =
      Stats(lab, [&](std::size_t i) { return cells[i] == 0; });
  if (out.count == 0) {
    throw DataError("image " + image.image_id + ": empty lesion exterior");
  }

  const double r_eq = std::sqrt(area_px / std::numbers::pi);
  const double ring_width = std::max(2.0, 0.2 * r_eq);
  const double ring_width_sq = ring_width * ring_width;
  const std::vector<double> dist_sq = SquaredDistanceToLesion(mask);
  const ChannelStats ring = Stats(lab, [&](std::size_t i) {
    return cells[i] == 0 && dist_sq[i] <= ring_width_sq;
  });
  if (ring.count == 0) {
    throw DataError("image " + image.image_id + ": empty exterior ring");
  }

  AttributeVector v;
  v[AttributeId::kAreaMM2] = area_px * scale * scale;
  v[AttributeId::kPerimeterMM] = geo.perimeter_px * scale;
  v[AttributeId::kClinSizeLongDiamMM] = geo.max_feret_px * scale;
  v[AttributeId::kMinorAxisMM] =
      std::min(geo.ellipse_minor_px, geo.max_feret_px) * scale;
  const double deficit = 1.0 - 4.0 * std::numbers::pi * area_px /
                                   (geo.perimeter_px * geo.perimeter_px);
  v[AttributeId::kNormBorder] =
      std::clamp(deficit, 0.0, std::nextafter(1.0, 0.0));
  v[AttributeId::kAreaPerimRatio] =
      v[AttributeId::kPerimeterMM] / v[AttributeId::kAreaMM2];

  v[AttributeId::kA] = in.mean[1];
  v[AttributeId::kB] = in.mean[2];
  v[AttributeId::kAext] = out.mean[1];
  v[AttributeId::kBext] = out.mean[2];
  v[AttributeId::kDeltaL] = in.mean[0] - out.mean[0];
  v[AttributeId::kDeltaB] = in.mean[2] - out.mean[2];
  v[AttributeId::kDeltaLB] = in.mean[0] - ring.mean[0];
  v[AttributeId::kStdLExt] = out.sd[0];
  v[AttributeId::kNormColor] = std::sqrt(
      in.sd[0] * in.sd[0] + in.sd[1] * in.sd[1] + in.sd[2] * in.sd[2]);
  v[AttributeId::kRadialColorStdMax] = RadialColorStdMax(image, lab);
  return v;
}

}  // namespace lesionseek
