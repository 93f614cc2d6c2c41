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

#include "lesionseek/train_export.h"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <random>

#include <nlohmann/json.hpp>

#include "lesionseek/attribute_oracle.h"
#include "lesionseek/errors.h"
#include "lesionseek/parallel.h"
#include "lesionseek/rng.h"

namespace lesionseek {
namespace {

constexpr std::array<std::string_view, kAttributeCount> kQuestions = {
    "What is the area of the lesion in mm^2?",
    "What is the smallest diameter of the lesion in mm?",
    "What is the color variation within the lesion?",
    "What is the radial color variation of the lesion?",
    "What is the B contrast between the lesion and the surrounding skin?",
    "What is the L contrast between the lesion and the surrounding skin?",
    "What is the L contrast between the lesion and the immediately surrounding skin?",
    "What is the L variation of the skin outside the lesion?",
    "What is the maximum diameter of the lesion in mm?",
    "What is the perimeter of the lesion in mm?",
    "What is the border irregularity of the lesion?",
    "What is the ratio between the perimeter and the area of the lesion?",
    "What is the average A value inside the lesion?",
    "What is the average A value outside the lesion?",
    "What is the average B value inside the lesion?",
    "What is the average B value outside the lesion?",
};

constexpr std::size_t kChunk = 4096;

}  // namespace

std::string_view QuestionFor(AttributeId a) {
  return kQuestions[static_cast<std::size_t>(AttributeIndex(a))];
}

std::string FormatValue(double value, int decimals) {
  if (!std::isfinite(value)) {
    throw InvalidArgumentError("cannot format a non-finite value");
  }
  if (decimals < 0 || decimals > 17) {
    throw InvalidArgumentError("decimals must lie in [0, 17]");
  }
  char buf[400];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value,
                                 std::chars_format::fixed, decimals);
  if (res.ec != std::errc()) throw InvalidArgumentError("value too large to format");
  std::string out(buf, res.ptr);
  if (out.front() == '-' && out.find_first_not_of("-0.") == std::string::npos) {
    out.erase(0, 1);
  }
  return out;
}

std::vector<AttributeId> SampleAttributes(std::uint64_t image_index, int w,
                                          std::uint64_t seed) {
  if (w < 1 || w > static_cast<int>(kAttributeCount)) {
    throw InvalidArgumentError("W must lie in [1, 16], got " + std::to_string(w));
  }
  std::array<AttributeId, kAttributeCount> pool = AllAttributes();
  std::mt19937_64 rng(StreamSeed(seed, image_index));
  // Partial Fisher-Yates: the first w slots are a uniform w-subset.
  for (int i = 0; i < w; ++i) {
    std::uniform_int_distribution<int> pick(i, static_cast<int>(kAttributeCount) - 1);
    std::swap(pool[i], pool[pick(rng)]);
  }
  return {pool.begin(), pool.begin() + w};
}

AttributeSource ManifestAttributeSource(const Manifest& manifest) {
  return [&manifest](std::size_t i) {
    const ManifestEntry& e = manifest.entries.at(i);
    if (e.attributes) return *e.attributes;
    return ComputeAttributes(LoadLesionImage(manifest, i));
  };
}

std::size_t ExportTrainingSet(const Manifest& manifest,
                              const AttributeSource& attributes,
                              const TrainExportOptions& options,
                              const std::filesystem::path& path) {
  if (manifest.entries.empty()) throw InvalidArgumentError("manifest is empty");
  // Validates W and decimals before any work.
  SampleAttributes(0, options.w, options.seed);
  FormatValue(0.0, options.decimals);

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  const std::size_t n = manifest.size();
  std::size_t count = 0;
  std::vector<std::string> lines;
  for (std::size_t start = 0; start < n; start += kChunk) {
    const std::size_t len = std::min(kChunk, n - start);
    lines.assign(len, std::string());
    ParallelFor(len, options.threads, [&](std::size_t j) {
      const std::size_t i = start + j;
      const ManifestEntry& e = manifest.entries[i];
      try {
        const AttributeVector v = attributes(i);
        const std::string image = ResolvePath(manifest, e.image_path).string();
        std::string block;
        for (AttributeId a : SampleAttributes(i, options.w, options.seed)) {
          nlohmann::json t;
          t["image"] = image;
          t["image_id"] = e.image_id;
          t["attribute"] = AttributeName(a);
          t["question"] = QuestionFor(a);
          t["answer"] = FormatValue(v[a], options.decimals);
          block += t.dump();
          block += '\n';
        }
        lines[j] = std::move(block);
      } catch (const std::exception& ex) {
        throw DataError("export failed for image " + e.image_id + ": " + ex.what());
      }
    });
    for (const std::string& block : lines) out << block;
    count += len * static_cast<std::size_t>(options.w);
  }
  out.flush();
  if (!out) throw DataError("write failed: " + path.string());

  nlohmann::json meta;
  meta["schema"] = "lesionseek.train_tuple";
  meta["schema_version"] = kTrainSchemaVersion;
  meta["fields"] = {"image", "image_id", "attribute", "question", "answer"};
  meta["w"] = options.w;
  meta["seed"] = options.seed;
  meta["decimals"] = options.decimals;
  meta["images"] = n;
  meta["tuples"] = count;
  nlohmann::json templates = nlohmann::json::object();
  for (AttributeId a : AllAttributes()) {
    templates[std::string(AttributeName(a))] = QuestionFor(a);
  }
  meta["questions"] = std::move(templates);
  std::filesystem::path meta_path = path;
  meta_path += ".meta.json";
  std::ofstream mo(meta_path, std::ios::binary | std::ios::trunc);
  if (!mo) throw DataError("cannot write " + meta_path.string());
  mo << meta.dump(2) << '\n';
  return count;
}

}  // namespace lesionseek
