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

#include "lesionseek/vector_store.h"

#include <algorithm>
#include <cmath>

#include "lesionseek/aedb.h"
#include "lesionseek/errors.h"
#include "lesionseek/parallel.h"

namespace lesionseek {

EmbeddingDatabase::EmbeddingDatabase(DatabaseTag tag, int dim,
                                     std::vector<std::string> ids,
                                     std::vector<float> matrix)
    : tag_(tag), dim_(dim), ids_(std::move(ids)), matrix_(std::move(matrix)) {
  if (dim_ < 2) throw InvalidArgumentError("database dimension must be >= 2");
  if (matrix_.size() != ids_.size() * static_cast<std::size_t>(dim_)) {
    throw InvalidArgumentError("ids and matrix rows differ in count");
  }
  index_.reserve(ids_.size());
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    if (ids_[i].empty()) throw InvalidArgumentError("empty id in database");
    if (!index_.emplace(ids_[i], i).second) {
      throw InvalidArgumentError("duplicate id in database: " + ids_[i]);
    }
    double ss = 0.0;
    for (float v : row(i)) ss += static_cast<double>(v) * v;
    if (!(std::abs(std::sqrt(ss) - 1.0) <= kUnitNormTolerance)) {
      throw InvalidArgumentError("row " + ids_[i] + " is not unit norm");
    }
  }
}

std::optional<std::size_t> EmbeddingDatabase::RowOf(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<Hit> TopK(const EmbeddingDatabase& db, std::span<const float> query,
                      std::size_t k, const std::string* exclude_id) {
  if (query.size() != static_cast<std::size_t>(db.dim())) {
    throw InvalidArgumentError("query dimension " + std::to_string(query.size()) +
                               " does not match database dimension " +
                               std::to_string(db.dim()));
  }
  std::optional<std::size_t> skip;
  if (exclude_id != nullptr) skip = db.RowOf(*exclude_id);
  const std::size_t searchable = db.size() - (skip ? 1 : 0);
  if (k == 0 || k > searchable) {
    throw InvalidArgumentError("k must lie in [1, " + std::to_string(searchable) +
                               "], got " + std::to_string(k));
  }

  double qn = 0.0;
  for (float v : query) qn += static_cast<double>(v) * v;
  if (!(qn > 0.0) || !std::isfinite(qn)) {
    throw InvalidArgumentError("query vector is zero or non-finite");
  }
  const double inv = 1.0 / std::sqrt(qn);
  std::vector<double> q(query.size());
  for (std::size_t i = 0; i < q.size(); ++i) q[i] = query[i] * inv;

  struct Scored {
    double sim;
    std::size_t row;
  };
  std::vector<Scored> scored;
  scored.reserve(searchable);
  const std::size_t d = q.size();
  for (std::size_t r = 0; r < db.size(); ++r) {
    if (skip && *skip == r) continue;
    const float* row = db.matrix().data() + r * d;
    double dot = 0.0;
    for (std::size_t j = 0; j < d; ++j) dot += static_cast<double>(row[j]) * q[j];
    scored.push_back({std::clamp(dot, -1.0, 1.0), r});
  }
  auto better = [&](const Scored& a, const Scored& b) {
    if (a.sim != b.sim) return a.sim > b.sim;
    return db.id(a.row) < db.id(b.row);
  };
  std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(k),
                    scored.end(), better);
  std::vector<Hit> hits;
  hits.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    hits.push_back({db.id(scored[i].row), scored[i].sim, scored[i].row});
  }
  return hits;
}

std::vector<EmbeddingDatabase> BuildDatabases(
    const EmbeddingProvider& provider, const std::vector<std::string>& ids,
    const ImageLoader& load, const std::vector<DatabaseTag>& tags, int threads) {
  if (ids.empty()) throw InvalidArgumentError("cannot build a database from no images");
  if (tags.empty()) throw InvalidArgumentError("no database tags requested");
  const int d = provider.dim();
  if (d < 2) throw InvalidArgumentError("provider dimension must be >= 2");
  const std::size_t n = ids.size();
  std::vector<std::vector<float>> matrices(tags.size(),
                                           std::vector<float>(n * d));
  const bool single = tags.size() == 1;
  ParallelFor(n, threads, [&](std::size_t i) {
    try {
      const LesionImage image = load(i);
      std::vector<EmbeddingVector> all;
      if (single) {
        all.push_back(provider.Embed(image, tags[0]));
      } else {
        all = provider.EmbedAll(image);
      }
      for (std::size_t t = 0; t < tags.size(); ++t) {
        const EmbeddingVector& v = single ? all[0] : all[tags[t].code()];
        if (v.size() != static_cast<std::size_t>(d)) {
          throw DataError("provider returned dimension " + std::to_string(v.size()));
        }
        std::copy(v.begin(), v.end(), matrices[t].begin() + i * d);
      }
    } catch (const std::exception& e) {
      throw DataError("embedding failed for image " + ids[i] + ": " + e.what());
    }
  });
  std::vector<EmbeddingDatabase> out;
  out.reserve(tags.size());
  for (std::size_t t = 0; t < tags.size(); ++t) {
    out.emplace_back(tags[t], d, ids, std::move(matrices[t]));
  }
  return out;
}

EmbeddingDatabase BuildDatabase(const EmbeddingProvider& provider,
                                const std::vector<std::string>& ids,
                                const ImageLoader& load, DatabaseTag tag,
                                int threads) {
  return std::move(BuildDatabases(provider, ids, load, {tag}, threads).front());
}

void SaveDatabase(const EmbeddingDatabase& db, const std::filesystem::path& path) {
  WriteEmbeddings(path, db.tag(), db.dim(), db.ids(), db.matrix());
}

EmbeddingDatabase LoadDatabase(const std::filesystem::path& path) {
  EmbeddingFile f = ReadEmbeddings(path);
  try {
    return EmbeddingDatabase(f.tag, f.dim, std::move(f.ids), std::move(f.matrix));
  } catch (const InvalidArgumentError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

}  // namespace lesionseek
