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

#ifndef LESIONSEEK_MANIFEST_H_
#define LESIONSEEK_MANIFEST_H_

#include <array>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "lesionseek/attribute.h"
#include "lesionseek/lesion_image.h"

namespace lesionseek {

// One line of an image manifest (JSON lines: image_id, patient_id,
// image_path, mask_path, scale_mm_per_px, optional attributes object).
struct ManifestEntry {
  std::string image_id;
  std::string patient_id;
  std::string image_path;
  std::string mask_path;
  double scale_mm_per_px = 0.0;
  std::optional<AttributeVector> attributes;
};

struct Manifest {
  std::vector<ManifestEntry> entries;
  // Relative image/mask paths resolve against this directory.
  std::filesystem::path base_dir;

  std::size_t size() const { return entries.size(); }
};

// Throws DataError naming the line on malformed input or duplicate ids.
Manifest ReadManifest(const std::filesystem::path& path);
void WriteManifest(const std::filesystem::path& path,
                   const std::vector<ManifestEntry>& entries);

nlohmann::json ManifestEntryToJson(const ManifestEntry& entry);
ManifestEntry ManifestEntryFromJson(const nlohmann::json& j);

// Decodes the image and mask PNGs and validates the result.
LesionImage LoadLesionImage(const Manifest& manifest, std::size_t index);

std::filesystem::path ResolvePath(const Manifest& manifest,
                                  const std::string& path);

// Attribute objects keyed by attribute name. `AttributesFromJson` requires
// all sixteen names; `PartialAttributesFromJson` accepts any subset.
nlohmann::json AttributesToJson(const AttributeVector& v);
AttributeVector AttributesFromJson(const nlohmann::json& j);
std::array<std::optional<double>, kAttributeCount> PartialAttributesFromJson(
    const nlohmann::json& j);

// Attribute dump: one {"image_id": ..., <16 named values>} object per line.
void WriteAttributeDump(const std::filesystem::path& path,
                        const std::vector<std::string>& ids,
                        const std::vector<AttributeVector>& values);
std::unordered_map<std::string, AttributeVector> ReadAttributeDump(
    const std::filesystem::path& path);

// Calls `fn(line_number, json)` for each non-empty line. Throws DataError
// naming the file and line on parse failure.
void ForEachJsonLine(
    const std::filesystem::path& path,
    const std::function<void(std::size_t, const nlohmann::json&)>& fn);

}  // namespace lesionseek

#endif  // LESIONSEEK_MANIFEST_H_
