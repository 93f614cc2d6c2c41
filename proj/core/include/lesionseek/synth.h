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

#ifndef LESIONSEEK_SYNTH_H_
#define LESIONSEEK_SYNTH_H_

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "lesionseek/lesion_image.h"
#include "lesionseek/manifest.h"

namespace lesionseek {

// Parameters of one synthetic lesion: a star-convex region whose radius is
// perturbed by random harmonics 3..12, filled with a noisy interior colour
// on a noisy exterior background.
struct LesionParams {
  double radius_px = 30.0;
  // Relative amplitude of the radial perturbation, in [0, 1].
  double jaggedness = 0.0;
  Rgb interior_rgb{120, 80, 70};
  Rgb exterior_rgb{200, 170, 150};
  double interior_noise_sd = 0.0;
  double exterior_noise_sd = 0.0;
  double scale_mm_per_px = 0.1;
  int image_side_px = 128;
};

// Throws InvalidArgumentError unless radius*(1+jaggedness) < side/2 - 2,
// side >= 16, and all magnitudes are in range.
void ValidateLesionParams(const LesionParams& params);

// Deterministic in (params, seed). The lesion is centred on pixel
// (side/2, side/2).
LesionImage GenerateLesion(const LesionParams& params, std::uint64_t seed,
                           std::string image_id = "",
                           std::string patient_id = "");

struct UniformRange {
  double lo = 0.0;
  double hi = 0.0;
};

struct ParamRanges {
  UniformRange radius_px{10.0, 36.0};
  UniformRange jaggedness{0.0, 0.6};
  UniformRange interior_r{90.0, 200.0};
  UniformRange interior_g{50.0, 140.0};
  UniformRange interior_b{40.0, 120.0};
  UniformRange exterior_r{170.0, 240.0};
  UniformRange exterior_g{130.0, 200.0};
  UniformRange exterior_b{110.0, 180.0};
  UniformRange interior_noise_sd{0.0, 12.0};
  UniformRange exterior_noise_sd{0.0, 6.0};
  UniformRange scale_mm_per_px{0.05, 0.15};
  int image_side_px = 128;
};

LesionParams SampleParams(const ParamRanges& ranges, std::mt19937_64& rng);

// Corpus description: manifest entries plus the generator inputs needed to
// re-create every image on demand.
struct SyntheticCorpus {
  std::vector<ManifestEntry> entries;
  std::vector<LesionParams> params;
  std::vector<std::uint64_t> image_seeds;

  std::size_t size() const { return entries.size(); }
  LesionImage Image(std::size_t index) const;
};

// Images are assigned round-robin to `n_patients` patients; parameters and
// per-image seeds derive from StreamSeed(seed, index). Paths are
// images/<id>.png and masks/<id>.png.
SyntheticCorpus DescribeCorpus(std::size_t n_images, std::size_t n_patients,
                               const ParamRanges& ranges, std::uint64_t seed);

// Writes images, masks and manifest.jsonl under `out_dir`.
void WriteCorpus(const SyntheticCorpus& corpus,
                 const std::filesystem::path& out_dir, int threads);

}  // namespace lesionseek

#endif  // LESIONSEEK_SYNTH_H_
