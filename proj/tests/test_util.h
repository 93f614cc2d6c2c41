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

#ifndef LESIONSEEK_TESTS_TEST_UTIL_H_
#define LESIONSEEK_TESTS_TEST_UTIL_H_

#include <cmath>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "lesionseek/attribute_oracle.h"
#include "lesionseek/embedding.h"
#include "lesionseek/lesion_image.h"
#include "lesionseek/synth.h"
#include "lesionseek/vector_store.h"

namespace lesionseek::testing {

// Pixel (r, c) is set when its center lies within `radius` of (cr, cc).
inline BinaryMask DiskMask(int side, double cr, double cc, double radius) {
  BinaryMask m(side, side);
  for (int r = 0; r < side; ++r) {
    for (int c = 0; c < side; ++c) {
      const double dr = r - cr;
      const double dc = c - cc;
      if (dr * dr + dc * dc <= radius * radius) m.Set(r, c, true);
    }
  }
  return m;
}

inline BinaryMask RectMask(int height, int width, int r0, int c0, int rows, int cols) {
  BinaryMask m(height, width);
  for (int r = r0; r < r0 + rows; ++r) {
    for (int c = c0; c < c0 + cols; ++c) m.Set(r, c, true);
  }
  return m;
}

// Two-color image over `mask`.
inline LesionImage PaintedLesion(const BinaryMask& mask, Rgb inside, Rgb outside,
                                 double scale, std::string id = "q") {
  LesionImage im;
  im.image_id = std::move(id);
  im.patient_id = "p";
  im.mask = mask;
  im.pixels = RgbImage(mask.height(), mask.width(), outside);
  for (int r = 0; r < mask.height(); ++r) {
    for (int c = 0; c < mask.width(); ++c) {
      if (mask(r, c)) im.pixels(r, c) = inside;
    }
  }
  im.scale_mm_per_px = scale;
  return im;
}

// Max pairwise distance between set pixel centers, by exhaustive search.
inline double BruteFeret(const BinaryMask& m) {
  std::vector<std::pair<int, int>> pts;
  for (int r = 0; r < m.height(); ++r) {
    for (int c = 0; c < m.width(); ++c) {
      if (m(r, c)) pts.emplace_back(r, c);
    }
  }
  long best = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const long dr = pts[i].first - pts[j].first;
      const long dc = pts[i].second - pts[j].second;
      best = std::max(best, dr * dr + dc * dc);
    }
  }
  return std::sqrt(static_cast<double>(best));
}

// Unit-norm random rows.
inline std::vector<float> RandomUnitRows(std::size_t n, int d, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<float> m(n * d);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> row(d);
    for (double& v : row) v = g(rng);
    const EmbeddingVector u = Normalize(row);
    std::copy(u.begin(), u.end(), m.begin() + i * d);
  }
  return m;
}

inline std::vector<std::string> SequentialIds(std::size_t n, const std::string& prefix = "id") {
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < n; ++i) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%s%05zu", prefix.c_str(), i);
    ids.emplace_back(buf);
  }
  return ids;
}

// Fresh scratch directory under the system temp dir.
inline std::filesystem::path ScratchDir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("lesionseek_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

// Small in-memory corpus with its training statistics.
struct MiniCorpus {
  SyntheticCorpus corpus;
  std::vector<AttributeVector> attributes;
  std::vector<std::vector<double>> visual;
  std::vector<std::string> ids;

  std::string prefix;

  // `id_prefix` keeps ids of independent corpora apart.
  explicit MiniCorpus(std::size_t n, std::uint64_t seed = 5, std::string id_prefix = "")
      : corpus(DescribeCorpus(n, std::max<std::size_t>(1, n / 5), ParamRanges{}, seed)),
        prefix(std::move(id_prefix)) {
    for (std::size_t i = 0; i < n; ++i) {
      const LesionImage im = corpus.Image(i);
      attributes.push_back(ComputeAttributes(im));
      visual.push_back(PatchGridFeatures(im));
      ids.push_back(prefix + corpus.entries[i].image_id);
    }
  }
  CorpusStats Stats() const { return ComputeCorpusStats(attributes, visual); }
  ImageLoader Loader() const {
    return [this](std::size_t i) {
      LesionImage im = corpus.Image(i);
      im.image_id = prefix + im.image_id;
      return im;
    };
  }
};

}  // namespace lesionseek::testing

#endif  // LESIONSEEK_TESTS_TEST_UTIL_H_
