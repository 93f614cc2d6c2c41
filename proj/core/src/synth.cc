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

#include "lesionseek/synth.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "lesionseek/errors.h"
#include "lesionseek/parallel.h"
#include "lesionseek/png_io.h"
#include "lesionseek/rng.h"

namespace lesionseek {
namespace {

constexpr int kFirstHarmonic = 3;
constexpr int kLastHarmonic = 12;
constexpr int kHarmonics = kLastHarmonic - kFirstHarmonic + 1;

std::uint8_t Noisy(std::uint8_t base, double sd, std::mt19937_64& rng) {
  if (sd <= 0.0) return base;
  std::normal_distribution<double> noise(0.0, sd);
  const double v = std::clamp(base + noise(rng), 0.0, 255.0);
  return static_cast<std::uint8_t>(std::lround(v));
}

double Draw(const UniformRange& r, std::mt19937_64& rng) {
  if (r.hi <= r.lo) return r.lo;
  return std::uniform_real_distribution<double>(r.lo, r.hi)(rng);
}

std::uint8_t DrawChannel(const UniformRange& r, std::mt19937_64& rng) {
  return static_cast<std::uint8_t>(std::lround(std::clamp(Draw(r, rng), 0.0, 255.0)));
}

std::string PaddedId(const char* prefix, std::size_t value, int width) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%s%0*zu", prefix, width, value);
  return buf;
}

}  // namespace

void ValidateLesionParams(const LesionParams& p) {
  if (p.image_side_px < 16) {
    throw InvalidArgumentError("image_side_px must be at least 16");
  }
  if (!(p.radius_px > 0.0)) throw InvalidArgumentError("radius_px must be positive");
  if (!(p.jaggedness >= 0.0 && p.jaggedness <= 1.0)) {
    throw InvalidArgumentError("jaggedness must lie in [0, 1]");
  }
  if (!(p.interior_noise_sd >= 0.0) || !(p.exterior_noise_sd >= 0.0)) {
    throw InvalidArgumentError("noise standard deviations must be >= 0");
  }
  if (!(p.scale_mm_per_px > 0.0)) {
    throw InvalidArgumentError("scale_mm_per_px must be positive");
  }
  if (!(p.radius_px * (1.0 + p.jaggedness) < p.image_side_px / 2.0 - 2.0)) {
    throw InvalidArgumentError("lesion does not fit inside the image");
  }
}

LesionImage GenerateLesion(const LesionParams& params, std::uint64_t seed,
                           std::string image_id, std::string patient_id) {
  ValidateLesionParams(params);
  std::mt19937_64 rng(seed);

  std::array<double, kHarmonics> weight{};
  std::array<double, kHarmonics> phase{};
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double total = 0.0;
  for (int h = 0; h < kHarmonics; ++h) {
    weight[h] = unit(rng);
    phase[h] = 2.0 * std::numbers::pi * unit(rng);
    total += weight[h];
  }
  // Weights sum to one so the radius stays within R*(1 +- jaggedness).
  for (auto& w : weight) w /= total;

  const int side = params.image_side_px;
  const double center = static_cast<double>(side / 2);
  LesionImage image;
  image.image_id = std::move(image_id);
  image.patient_id = std::move(patient_id);
  image.scale_mm_per_px = params.scale_mm_per_px;
  image.mask = BinaryMask(side, side);
  image.pixels = RgbImage(side, side);

  for (int r = 0; r < side; ++r) {
    for (int c = 0; c < side; ++c) {
      const double dy = r - center;
      const double dx = c - center;
      const double dist = std::hypot(dx, dy);
      double radius = params.radius_px;
      if (params.jaggedness > 0.0 && dist > 0.0) {
        const double theta = std::atan2(dy, dx);
        double wave = 0.0;
        for (int h = 0; h < kHarmonics; ++h) {
          wave += weight[h] * std::cos((kFirstHarmonic + h) * theta + phase[h]);
        }
        radius *= 1.0 + params.jaggedness * wave;
      }
      image.mask.Set(r, c, dist <= radius);
    }
  }

  // Colours are drawn after the shape so the mask does not depend on noise.
  for (int r = 0; r < side; ++r) {
    for (int c = 0; c < side; ++c) {
      const bool inside = image.mask(r, c);
      const Rgb base = inside ? params.interior_rgb : params.exterior_rgb;
      const double sd =
          inside ? params.interior_noise_sd : params.exterior_noise_sd;
      image.pixels(r, c) = Rgb{Noisy(base.r, sd, rng), Noisy(base.g, sd, rng),
                               Noisy(base.b, sd, rng)};
    }
  }
  return image;
}

LesionParams SampleParams(const ParamRanges& ranges, std::mt19937_64& rng) {
  LesionParams p;
  p.image_side_px = ranges.image_side_px;
  p.radius_px = Draw(ranges.radius_px, rng);
  p.jaggedness = Draw(ranges.jaggedness, rng);
  p.interior_rgb = Rgb{DrawChannel(ranges.interior_r, rng),
                       DrawChannel(ranges.interior_g, rng),
                       DrawChannel(ranges.interior_b, rng)};
  p.exterior_rgb = Rgb{DrawChannel(ranges.exterior_r, rng),
                       DrawChannel(ranges.exterior_g, rng),
                       DrawChannel(ranges.exterior_b, rng)};
  p.interior_noise_sd = Draw(ranges.interior_noise_sd, rng);
  p.exterior_noise_sd = Draw(ranges.exterior_noise_sd, rng);
  p.scale_mm_per_px = Draw(ranges.scale_mm_per_px, rng);
  ValidateLesionParams(p);
  return p;
}

LesionImage SyntheticCorpus::Image(std::size_t index) const {
  const ManifestEntry& e = entries.at(index);
  return GenerateLesion(params.at(index), image_seeds.at(index), e.image_id,
                        e.patient_id);
}

SyntheticCorpus DescribeCorpus(std::size_t n_images, std::size_t n_patients,
                               const ParamRanges& ranges, std::uint64_t seed) {
  if (n_images == 0) throw InvalidArgumentError("n_images must be positive");
  if (n_patients == 0 || n_patients > n_images) {
    throw InvalidArgumentError("n_patients must lie in [1, n_images]");
  }
  SyntheticCorpus corpus;
  corpus.entries.reserve(n_images);
  corpus.params.reserve(n_images);
  corpus.image_seeds.reserve(n_images);
  for (std::size_t i = 0; i < n_images; ++i) {
    std::mt19937_64 rng(StreamSeed(seed, i));
    LesionParams p = SampleParams(ranges, rng);
    ManifestEntry e;
    e.image_id = PaddedId("img_", i, 6);
    e.patient_id = PaddedId("pat_", i % n_patients, 4);
    e.image_path = "images/" + e.image_id + ".png";
    e.mask_path = "masks/" + e.image_id + ".png";
    e.scale_mm_per_px = p.scale_mm_per_px;
    corpus.entries.push_back(std::move(e));
    corpus.params.push_back(p);
    corpus.image_seeds.push_back(rng());
  }
  return corpus;
}

void WriteCorpus(const SyntheticCorpus& corpus,
                 const std::filesystem::path& out_dir, int threads) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir / "images", ec);
  std::filesystem::create_directories(out_dir / "masks", ec);
  if (ec || !std::filesystem::is_directory(out_dir / "images")) {
    throw DataError("cannot create output directory " + out_dir.string());
  }
  ParallelFor(corpus.size(), threads, [&](std::size_t i) {
    const LesionImage image = corpus.Image(i);
    WriteRgbPng(out_dir / corpus.entries[i].image_path, image.pixels);
    WriteMaskPng(out_dir / corpus.entries[i].mask_path, image.mask);
  });
  WriteManifest(out_dir / "manifest.jsonl", corpus.entries);
}

}  // namespace lesionseek
