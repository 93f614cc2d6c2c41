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

#ifndef LESIONSEEK_SPLIT_H_
#define LESIONSEEK_SPLIT_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "lesionseek/manifest.h"

namespace lesionseek {

// Patient-disjoint train/test partition of a manifest. Id lists follow
// manifest order.
struct DatasetSplit {
  std::vector<std::string> train_ids;
  std::vector<std::string> test_ids;
  double achieved_train_fraction = 0.0;
};

// Shuffles patients with `seed` and moves whole patients into train until
// the train image count reaches train_fraction * total; the rest go to
// test. Test always keeps at least one patient. Throws InvalidArgumentError
// with fewer than two patients or a fraction outside (0, 1).
DatasetSplit MakeSplit(const std::vector<ManifestEntry>& entries,
                       double train_fraction, std::uint64_t seed);

// Throws DataError if the split overlaps, misses an image, or places a
// patient on both sides.
void ValidateSplit(const DatasetSplit& split,
                   const std::vector<ManifestEntry>& entries);

// {"train_ids": [...], "test_ids": [...], "achieved_train_fraction": x}
void WriteSplit(const std::filesystem::path& path, const DatasetSplit& split);
DatasetSplit ReadSplit(const std::filesystem::path& path);

// Entries whose image_id is listed, in manifest order.
std::vector<ManifestEntry> SelectEntries(
    const std::vector<ManifestEntry>& entries,
    const std::vector<std::string>& ids);

}  // namespace lesionseek

#endif  // LESIONSEEK_SPLIT_H_
