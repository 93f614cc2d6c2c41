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

#include "lesionseek/manifest.h"

#include <fstream>
#include <unordered_set>

#include "lesionseek/errors.h"
#include "lesionseek/png_io.h"

namespace lesionseek {

using nlohmann::json;

void ForEachJsonLine(const std::filesystem::path& path,
                     const std::function<void(std::size_t, const json&)>& fn) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      fn(line_no, json::parse(line));
    } catch (const json::exception& e) {
      throw DataError(path.string() + ":" + std::to_string(line_no) + ": " +
                      e.what());
    } catch (const Error& e) {
      throw DataError(path.string() + ":" + std::to_string(line_no) + ": " +
                      e.what());
    }
  }
}

json AttributesToJson(const AttributeVector& v) {
  json j = json::object();
  for (AttributeId id : AllAttributes()) j[std::string(AttributeName(id))] = v[id];
  return j;
}

std::array<std::optional<double>, kAttributeCount> PartialAttributesFromJson(
    const json& j) {
  if (!j.is_object()) throw DataError("attributes must be a JSON object");
  std::array<std::optional<double>, kAttributeCount> out;
  for (const auto& [key, value] : j.items()) {
    const AttributeId id = AttributeFromName(key);
    if (!value.is_number()) {
      throw DataError("attribute " + key + " is not a number");
    }
    out[AttributeIndex(id)] = value.get<double>();
  }
  return out;
}

AttributeVector AttributesFromJson(const json& j) {
  const auto partial = PartialAttributesFromJson(j);
  AttributeVector v;
  for (AttributeId id : AllAttributes()) {
    const auto& value = partial[AttributeIndex(id)];
    if (!value) {
      throw DataError("missing attribute " + std::string(AttributeName(id)));
    }
    v[id] = *value;
  }
  return v;
}

json ManifestEntryToJson(const ManifestEntry& e) {
  json j;
  j["image_id"] = e.image_id;
  j["patient_id"] = e.patient_id;
  j["image_path"] = e.image_path;
  j["mask_path"] = e.mask_path;
  j["scale_mm_per_px"] = e.scale_mm_per_px;
  if (e.attributes) j["attributes"] = AttributesToJson(*e.attributes);
  return j;
}

ManifestEntry ManifestEntryFromJson(const json& j) {
  ManifestEntry e;
  e.image_id = j.at("image_id").get<std::string>();
  e.patient_id = j.at("patient_id").get<std::string>();
  e.image_path = j.at("image_path").get<std::string>();
  e.mask_path = j.at("mask_path").get<std::string>();
  e.scale_mm_per_px = j.at("scale_mm_per_px").get<double>();
  if (!(e.scale_mm_per_px > 0.0)) {
    throw DataError("scale_mm_per_px must be positive for " + e.image_id);
  }
  if (auto it = j.find("attributes"); it != j.end()) {
    e.attributes = AttributesFromJson(*it);
  }
  return e;
}

Manifest ReadManifest(const std::filesystem::path& path) {
  Manifest m;
  m.base_dir = path.parent_path();
  std::unordered_set<std::string> seen;
  ForEachJsonLine(path, [&](std::size_t, const json& j) {
    ManifestEntry e = ManifestEntryFromJson(j);
    if (!seen.insert(e.image_id).second) {
      throw DataError("duplicate image_id " + e.image_id);
    }
    m.entries.push_back(std::move(e));
  });
  return m;
}

void WriteManifest(const std::filesystem::path& path,
                   const std::vector<ManifestEntry>& entries) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  for (const auto& e : entries) out << ManifestEntryToJson(e).dump() << '\n';
  if (!out) throw DataError("write failed: " + path.string());
}

std::filesystem::path ResolvePath(const Manifest& manifest,
                                  const std::string& path) {
  std::filesystem::path p(path);
  return p.is_absolute() ? p : manifest.base_dir / p;
}

LesionImage LoadLesionImage(const Manifest& manifest, std::size_t index) {
  const ManifestEntry& e = manifest.entries.at(index);
  LesionImage image;
  image.image_id = e.image_id;
  image.patient_id = e.patient_id;
  image.scale_mm_per_px = e.scale_mm_per_px;
  image.pixels = ReadRgbPng(ResolvePath(manifest, e.image_path));
  image.mask = ReadMaskPng(ResolvePath(manifest, e.mask_path));
  ValidateLesionImage(image);
  return image;
}

void WriteAttributeDump(const std::filesystem::path& path,
                        const std::vector<std::string>& ids,
                        const std::vector<AttributeVector>& values) {
  if (ids.size() != values.size()) {
    throw InvalidArgumentError("ids and attribute rows differ in length");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    json j = AttributesToJson(values[i]);
    j["image_id"] = ids[i];
    out << j.dump() << '\n';
  }
  if (!out) throw DataError("write failed: " + path.string());
}

std::unordered_map<std::string, AttributeVector> ReadAttributeDump(
    const std::filesystem::path& path) {
  std::unordered_map<std::string, AttributeVector> out;
  ForEachJsonLine(path, [&](std::size_t, const json& j) {
    json values = j;
    const std::string id = values.at("image_id").get<std::string>();
    values.erase("image_id");
    if (!out.emplace(id, AttributesFromJson(values)).second) {
      throw DataError("duplicate image_id " + id);
    }
  });
  return out;
}

}  // namespace lesionseek
