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

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <utility>

#include "lesionseek/errors.h"

namespace lesionseek {
namespace {

struct Offset {
  int dr;
  int dc;
};

// Moore neighbourhood in clockwise order starting at north.
constexpr std::array<Offset, 8> kRing = {{
    {-1, 0}, {-1, 1}, {0, 1}, {1, 1}, {1, 0}, {1, -1}, {0, -1}, {-1, -1},
}};

int RingIndex(int dr, int dc) {
  for (int i = 0; i < 8; ++i) {
    if (kRing[i].dr == dr && kRing[i].dc == dc) return i;
  }
  return -1;
}

struct StepCounts {
  std::int64_t orthogonal = 0;
  std::int64_t diagonal = 0;
};

// Moore-neighbour tracing of the outer boundary that starts at `start`, the
// first pixel of its component in raster order. Terminates when the walk is
// about to repeat its first move from the start pixel.
StepCounts TraceOuterContour(const BinaryMask& mask, int start_row,
                             int start_col) {
  StepCounts counts;
  int row = start_row;
  int col = start_col;
  int back = 6;  // west of the start pixel is background
  int first_dir = -1;
  const std::int64_t step_limit =
      8 * static_cast<std::int64_t>(mask.height()) * mask.width() + 8;
  for (std::int64_t guard = 0; guard < step_limit; ++guard) {
    int found = -1;
    for (int i = 1; i <= 8; ++i) {
      const int dir = (back + i) % 8;
      if (mask.At(row + kRing[dir].dr, col + kRing[dir].dc)) {
        found = dir;
        break;
      }
    }
    if (found < 0) break;  // isolated pixel
    if (row == start_row && col == start_col && found == first_dir) break;
    if (first_dir < 0) first_dir = found;
    if (found % 2 == 0) {
      ++counts.orthogonal;
    } else {
      ++counts.diagonal;
    }
    const int prev = (found + 7) % 8;
    back = RingIndex(kRing[prev].dr - kRing[found].dr,
                     kRing[prev].dc - kRing[found].dc);
    row += kRing[found].dr;
    col += kRing[found].dc;
  }
  return counts;
}

struct Point {
  std::int64_t r;
  std::int64_t c;
  friend auto operator<=>(const Point&, const Point&) = default;
};

std::int64_t Cross(const Point& o, const Point& a, const Point& b) {
  return (a.r - o.r) * (b.c - o.c) - (a.c - o.c) * (b.r - o.r);
}

// Andrew's monotone chain; collinear points dropped.
std::vector<Point> ConvexHull(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Point> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && Cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i > 0; --i) {
    const auto& p = pts[i - 1];
    while (k >= t && Cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  hull.resize(k - 1);
  return hull;
}

bool IsBoundaryPixel(const BinaryMask& mask, int r, int c) {
  return !mask.At(r - 1, c) || !mask.At(r + 1, c) || !mask.At(r, c - 1) ||
         !mask.At(r, c + 1);
}

// One-dimensional squared distance transform (Felzenszwalb & Huttenlocher).
void DistanceTransform1D(const std::vector<double>& f, std::vector<double>& d,
                         std::vector<int>& v, std::vector<double>& z) {
  const int n = static_cast<int>(f.size());
  int k = 0;
  v[0] = 0;
  z[0] = -std::numeric_limits<double>::infinity();
  z[1] = std::numeric_limits<double>::infinity();
  auto intersect = [&](int q, int p) {
    return ((f[q] + static_cast<double>(q) * q) -
            (f[p] + static_cast<double>(p) * p)) /
           (2.0 * q - 2.0 * p);
  };
  for (int q = 1; q < n; ++q) {
    double s = intersect(q, v[k]);
    while (s <= z[k]) {
      --k;
      s = intersect(q, v[k]);
    }
    ++k;
    v[k] = q;
    z[k] = s;
    z[k + 1] = std::numeric_limits<double>::infinity();
  }
  k = 0;
  for (int q = 0; q < n; ++q) {
    while (z[k + 1] < q) ++k;
    const double dq = static_cast<double>(q - v[k]);
    d[q] = dq * dq + f[v[k]];
  }
}

}  // namespace

double ChainCodeContourLength(const BinaryMask& mask) {
  const int h = mask.height();
  const int w = mask.width();
  std::vector<std::uint8_t> seen(static_cast<std::size_t>(h) * w, 0);
  std::vector<std::pair<int, int>> stack;
  StepCounts total;
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      const std::size_t idx = static_cast<std::size_t>(r) * w + c;
      if (!mask(r, c) || seen[idx]) continue;
      // (r, c) is the first raster pixel of a new 8-connected component.
      const StepCounts steps = TraceOuterContour(mask, r, c);
      total.orthogonal += steps.orthogonal;
      total.diagonal += steps.diagonal;
      seen[idx] = 1;
      stack.emplace_back(r, c);
      while (!stack.empty()) {
        const auto [pr, pc] = stack.back();
        stack.pop_back();
        for (const auto& o : kRing) {
          const int nr = pr + o.dr;
          const int nc = pc + o.dc;
          if (!mask.At(nr, nc)) continue;
          const std::size_t nidx = static_cast<std::size_t>(nr) * w + nc;
          if (seen[nidx]) continue;
          seen[nidx] = 1;
          stack.emplace_back(nr, nc);
        }
      }
    }
  }
  return kOrthogonalStep * static_cast<double>(total.orthogonal) +
         kDiagonalStep * static_cast<double>(total.diagonal);
}

MaskGeometry ComputeMaskGeometry(const BinaryMask& mask) {
  MaskGeometry g;
  std::int64_t sum_r = 0;
  std::int64_t sum_c = 0;
  std::vector<Point> boundary;
  for (int r = 0; r < mask.height(); ++r) {
    for (int c = 0; c < mask.width(); ++c) {
      if (!mask(r, c)) continue;
      ++g.area_px;
      sum_r += r;
      sum_c += c;
      if (IsBoundaryPixel(mask, r, c)) boundary.push_back({r, c});
    }
  }
  if (g.area_px == 0) throw DataError("empty lesion mask");

  const double n = static_cast<double>(g.area_px);
  g.centroid_row = static_cast<double>(sum_r) / n;
  g.centroid_col = static_cast<double>(sum_c) / n;

  double mu_rr = 0.0;
  double mu_cc = 0.0;
  double mu_rc = 0.0;
  for (int r = 0; r < mask.height(); ++r) {
    for (int c = 0; c < mask.width(); ++c) {
      if (!mask(r, c)) continue;
      const double dr = r - g.centroid_row;
      const double dc = c - g.centroid_col;
      mu_rr += dr * dr;
      mu_cc += dc * dc;
      mu_rc += dr * dc;
    }
  }
  mu_rr /= n;
  mu_cc /= n;
  mu_rc /= n;
  const double mean = 0.5 * (mu_rr + mu_cc);
  const double spread =
      std::sqrt(0.25 * (mu_rr - mu_cc) * (mu_rr - mu_cc) + mu_rc * mu_rc);
  g.ellipse_major_px = 4.0 * std::sqrt(mean + spread);
  g.ellipse_minor_px = 4.0 * std::sqrt(std::max(0.0, mean - spread));

  const std::vector<Point> hull = ConvexHull(std::move(boundary));
  std::int64_t best = 0;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    for (std::size_t j = i + 1; j < hull.size(); ++j) {
      const std::int64_t dr = hull[i].r - hull[j].r;
      const std::int64_t dc = hull[i].c - hull[j].c;
      best = std::max(best, dr * dr + dc * dc);
    }
  }
  g.max_feret_px = std::sqrt(static_cast<double>(best));

  g.perimeter_px = std::max(ChainCodeContourLength(mask),
                            std::sqrt(4.0 * std::numbers::pi * n));
  return g;
}

std::vector<double> SquaredDistanceToLesion(const BinaryMask& mask) {
  const int h = mask.height();
  const int w = mask.width();
  if (mask.CountSet() == 0) throw DataError("empty lesion mask");
  // Large but finite so parabola intersections stay well defined.
  constexpr double kFar = 1e20;
  std::vector<double> grid(static_cast<std::size_t>(h) * w);
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      grid[static_cast<std::size_t>(r) * w + c] = mask(r, c) ? 0.0 : kFar;
    }
  }
  const int n = std::max(h, w);
  std::vector<double> f(n);
  std::vector<double> d(n);
  std::vector<int> v(n);
  std::vector<double> z(n + 1);

  f.resize(h);
  d.resize(h);
  for (int c = 0; c < w; ++c) {
    for (int r = 0; r < h; ++r) f[r] = grid[static_cast<std::size_t>(r) * w + c];
    DistanceTransform1D(f, d, v, z);
    for (int r = 0; r < h; ++r) grid[static_cast<std::size_t>(r) * w + c] = d[r];
  }
  f.resize(w);
  d.resize(w);
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) f[c] = grid[static_cast<std::size_t>(r) * w + c];
    DistanceTransform1D(f, d, v, z);
    for (int c = 0; c < w; ++c) grid[static_cast<std::size_t>(r) * w + c] = d[c];
  }
  return grid;
}

}  // namespace lesionseek
