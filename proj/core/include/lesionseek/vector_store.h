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

#ifndef LESIONSEEK_VECTOR_STORE_H_
#define LESIONSEEK_VECTOR_STORE_H_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "lesionseek/embedding.h"

namespace lesionseek {

// Row norms must be within this of 1.
inline constexpr double kUnitNormTolerance = 1e-5;

// Immutable exact-search database: one unit-norm row per image id.
class EmbeddingDatabase {
 public:
  // Throws InvalidArgumentError on duplicate or empty ids, dim < 2, a
  // row-count mismatch, or a row that is not unit norm.
  EmbeddingDatabase(DatabaseTag tag, int dim, std::vector<std::string> ids,
                    std::vector<float> matrix);

  DatabaseTag tag() const { return tag_; }
  int dim() const { return dim_; }
  std::size_t size() const { return ids_.size(); }
  const std::vector<std::string>& ids() const { return ids_; }
  const std::string& id(std::size_t row) const { return ids_[row]; }
  const std::vector<float>& matrix() const { return matrix_; }

  std::span<const float> row(std::size_t i) const {
    return {matrix_.data() + i * static_cast<std::size_t>(dim_),
            static_cast<std::size_t>(dim_)};
  }
  std::optional<std::size_t> RowOf(const std::string& id) const;

 private:
  DatabaseTag tag_;
  int dim_;
  std::vector<std::string> ids_;
  std::vector<float> matrix_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct Hit {
  std::string id;
  double similarity = 0.0;
  std::size_t row = 0;  // row in the database that produced the hit
};

// Exact cosine top-k: hits sorted by similarity descending, ties broken by
// ascending id. When `exclude_id` names a row, that row is skipped and k
// may be at most size() - 1. Throws InvalidArgumentError if k is 0 or
// exceeds the searchable rows, or on a dimension mismatch.
std::vector<Hit> TopK(const EmbeddingDatabase& db, std::span<const float> query,
                      std::size_t k, const std::string* exclude_id = nullptr);

// Row i is provider.Embed(load(i), tag). Throws InvalidArgumentError for
// an empty collection; a failure on any image is rethrown as DataError
// naming that image.
EmbeddingDatabase BuildDatabase(const EmbeddingProvider& provider,
                                const std::vector<std::string>& ids,
                                const ImageLoader& load, DatabaseTag tag,
                                int threads = 1);

// Builds several databases in one pass, embedding each image once via
// EmbedAll. Result order follows `tags`.
std::vector<EmbeddingDatabase> BuildDatabases(
    const EmbeddingProvider& provider, const std::vector<std::string>& ids,
    const ImageLoader& load, const std::vector<DatabaseTag>& tags,
    int threads = 1);

void SaveDatabase(const EmbeddingDatabase& db, const std::filesystem::path& path);
EmbeddingDatabase LoadDatabase(const std::filesystem::path& path);

}  // namespace lesionseek

#endif  // LESIONSEEK_VECTOR_STORE_H_
