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

#ifndef LESIONSEEK_TRAIN_EXPORT_H_
#define LESIONSEEK_TRAIN_EXPORT_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "lesionseek/attribute.h"
#include "lesionseek/manifest.h"

namespace lesionseek {

// Version of the exported tuple schema, recorded in the sidecar.
inline constexpr int kTrainSchemaVersion = 1;

// Question template per attribute. The sixteen templates are distinct and
// fixed; any external embedder must use them byte for byte.
//
//   areaMM2                  What is the area of the lesion in mm^2?
//   minorAxisMM              What is the smallest diameter of the lesion in mm?
//   norm_color               What is the color variation within the lesion?
//   radial_color_std_max     What is the radial color variation of the lesion?
//   deltaB                   What is the B contrast between the lesion and the surrounding skin?
//   deltaL                   What is the L contrast between the lesion and the surrounding skin?
//   deltaLB                  What is the L contrast between the lesion and the immediately surrounding skin?
//   stdLExt                  What is the L variation of the skin outside the lesion?
//   clin_size_long_diam_mm   What is the maximum diameter of the lesion in mm?
//   perimeterMM              What is the perimeter of the lesion in mm?
//   norm_border              What is the border irregularity of the lesion?
//   area_perim_ratio         What is the ratio between the perimeter and the area of the lesion?
//   A                        What is the average A value inside the lesion?
//   Aext                     What is the average A value outside the lesion?
//   B                        What is the average B value inside the lesion?
//   Bext                     What is the average B value outside the lesion?
std::string_view QuestionFor(AttributeId a);

// Fixed-point decimal with round-half-even on the exact binary value, no
// grouping, leading '-' for negatives. Negative zero prints without sign.
// Throws InvalidArgumentError for non-finite values or decimals outside
// [0, 17].
std::string FormatValue(double value, int decimals = 2);

// W distinct attributes drawn uniformly without replacement. The draw
// depends only on (seed, image_index). Throws InvalidArgumentError unless
// 1 <= w <= 16.
std::vector<AttributeId> SampleAttributes(std::uint64_t image_index, int w,
                                          std::uint64_t seed);

struct TrainExportOptions {
  int w = 5;
  std::uint64_t seed = 0;
  int decimals = 2;
  int threads = 1;
};

// Ground-truth attributes of manifest entry i.
using AttributeSource = std::function<AttributeVector(std::size_t)>;

// Manifest attributes when present, otherwise the pixel oracle.
AttributeSource ManifestAttributeSource(const Manifest& manifest);

// Writes |manifest| x W JSON lines
//   {"image", "image_id", "attribute", "question", "answer"}
// in manifest order, plus `<path>.meta.json` describing the schema and
// options. Returns the number of tuples written. A failure on one image is
// rethrown as DataError naming it.
std::size_t ExportTrainingSet(const Manifest& manifest,
                              const AttributeSource& attributes,
                              const TrainExportOptions& options,
                              const std::filesystem::path& path);

}  // namespace lesionseek

#endif  // LESIONSEEK_TRAIN_EXPORT_H_
