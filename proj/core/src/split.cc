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

#include "lesionseek/split.h"

#include <algorithm>
#include <fstream>
#include <random>
#include <unordered_map>
#include <unordered_set>

#include "lesionseek/errors.h"

namespace lesionseek {

DatasetSplit MakeSplit(const std::vector<ManifestEntry>& entries,
                       double train_fraction, std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw InvalidArgumentError("train_fraction must lie in (0, 1)");
  }
  std::vector<std::string> patients;
  std::unordered_map<std::string, std::size_t> images_per_patient;
  for (const auto& e : entries) {
    if (images_per_patient[e.patient_id]++ == 0) patients.push_back(e.patient_id);
  }
  if (patients.size() < 2) {
    throw InvalidArgumentError(
        "cannot stratify by patient: need at least 2 patients");
  }
  std::mt19937_64 rng(seed);
  std::shuffle(patients.begin(), patients.end(), rng);

  const double target = train_fraction * static_cast<double>(entries.size());
  std::unordered_set<std::string> train_patients;
  std::size_t train_images = 0;
  for (std::size_t i = 0; i + 1 < patients.size(); ++i) {
    if (static_cast<double>(train_images) >= target) break;
    train_patients.insert(patients[i]);
    train_images += images_per_patient[patients[i]];
  }

  DatasetSplit split;
  for (const auto& e : entries) {
    (train_patients.contains(e.patient_id) ? split.train_ids : split.test_ids)
        .push_back(e.image_id);
  }
  split.achieved_train_fraction =
      static_cast<double>(split.train_ids.size()) / entries.size();
  return split;
}

void ValidateSplit(const DatasetSplit& split,
                   const std::vector<ManifestEntry>& entries) {
  std::unordered_map<std::string, const ManifestEntry*> by_id;
  for (const auto& e : entries) by_id[e.image_id] = &e;
  std::unordered_set<std::string> train(split.train_ids.begin(),
                                        split.train_ids.end());
  std::unordered_set<std::string> train_patients;
  for (const auto& id : split.train_ids) {
    auto it = by_id.find(id);
    if (it == by_id.end()) throw DataError("split lists unknown id " + id);
    train_patients.insert(it->second->patient_id);
  }
  for (const auto& id : split.test_ids) {
    if (train.contains(id)) throw DataError("id on both sides: " + id);
    auto it = by_id.find(id);
    if (it == by_id.end()) throw DataError("split lists unknown id " + id);
    if (train_patients.contains(it->second->patient_id)) {
      throw DataError("patient on both sides: " + it->second->patient_id);
    }
  }
  if (train.size() + split.test_ids.size() != entries.size() ||
      train.size() != split.train_ids.size()) {
    throw DataError("split does not cover the manifest exactly once");
  }
}

void WriteSplit(const std::filesystem::path& path, const DatasetSplit& split) {
  nlohmann::json j;
  j["train_ids"] = split.train_ids;
  j["test_ids"] = split.test_ids;
  j["achieved_train_fraction"] = split.achieved_train_fraction;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

DatasetSplit ReadSplit(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  try {
    const nlohmann::json j = nlohmann::json::parse(in);
    DatasetSplit split;
    split.train_ids = j.at("train_ids").get<std::vector<std::string>>();
    split.test_ids = j.at("test_ids").get<std::vector<std::string>>();
    split.achieved_train_fraction = j.at("achieved_train_fraction").get<double>();
    return split;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

std::vector<ManifestEntry> SelectEntries(
    const std::vector<ManifestEntry>& entries,
    const std::vector<std::string>& ids) {
  const std::unordered_set<std::string> wanted(ids.begin(), ids.end());
  std::vector<ManifestEntry> out;
  for (const auto& e : entries) {
    if (wanted.contains(e.image_id)) out.push_back(e);
  }
  return out;
}

}  // namespace lesionseek
