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

#include "lesionseek/retrieval.h"

#include <algorithm>

#include "lesionseek/errors.h"

namespace lesionseek {
namespace {

void RequireTag(const EmbeddingDatabase& db, DatabaseTag expected) {
  if (!(db.tag() == expected)) {
    throw InvalidArgumentError("database tag " + db.tag().name() +
                               " does not match required tag " + expected.name());
  }
}

std::vector<Hit> Search(const EmbeddingDatabase& db, std::span<const float> query,
                        std::size_t k, const std::string& query_id,
                        const SearchOptions& options) {
  return TopK(db, query, k, options.exclude_self ? &query_id : nullptr);
}

}  // namespace

const char* SearchStrategyName(SearchStrategy s) {
  switch (s) {
    case SearchStrategy::kImageOnly:
      return "image";
    case SearchStrategy::kAttribute:
      return "attr";
    case SearchStrategy::kHierarchical:
      return "hier";
  }
  return "?";
}

SearchStrategy SearchStrategyFromName(std::string_view name) {
  if (name == "image") return SearchStrategy::kImageOnly;
  if (name == "attr") return SearchStrategy::kAttribute;
  if (name == "hier") return SearchStrategy::kHierarchical;
  throw InvalidArgumentError("unknown search strategy: " + std::string(name));
}

EmbeddingVector ProviderCandidateEmbedder::Embed(std::size_t row,
                                                 AttributeId a) const {
  return provider_.EmbedImageAttribute(load_(row), a);
}

CachingCandidateEmbedder::CachingCandidateEmbedder(
    const EmbeddingProvider& provider, ImageLoader load, std::size_t rows)
    : provider_(provider),
      load_(std::move(load)),
      once_(std::make_unique<std::once_flag[]>(rows)),
      cache_(rows) {}

EmbeddingVector CachingCandidateEmbedder::Embed(std::size_t row,
                                                AttributeId a) const {
  if (row >= cache_.size()) throw InvalidArgumentError("candidate row out of range");
  std::call_once(once_[row], [&] {
    std::vector<EmbeddingVector> all = provider_.EmbedAll(load_(row));
    all.erase(all.begin());  // image-only vector is not needed here
    cache_[row] = std::move(all);
  });
  return cache_[row][AttributeIndex(a)];
}

DatabaseCandidateEmbedder::DatabaseCandidateEmbedder(
    const EmbeddingDatabase& image_db,
    std::vector<const EmbeddingDatabase*> attribute_dbs) {
  for (const EmbeddingDatabase* db : attribute_dbs) {
    if (db == nullptr) continue;
    if (db->tag().is_image_only()) {
      throw InvalidArgumentError("stage-2 database must be attribute-tagged");
    }
    if (db->ids() != image_db.ids()) {
      throw InvalidArgumentError("database " + db->tag().name() +
                                 " rows do not align with the image database");
    }
    dbs_[AttributeIndex(db->tag().attribute())] = db;
  }
}

EmbeddingVector DatabaseCandidateEmbedder::Embed(std::size_t row,
                                                 AttributeId a) const {
  const EmbeddingDatabase* db = dbs_[AttributeIndex(a)];
  if (db == nullptr) {
    throw InvalidArgumentError("no database for attribute " +
                               std::string(AttributeName(a)));
  }
  const auto r = db->row(row);
  return EmbeddingVector(r.begin(), r.end());
}

RetrievalResult SearchImageOnly(const std::string& query_id,
                                std::span<const float> query,
                                const EmbeddingDatabase& image_db, std::size_t k,
                                const SearchOptions& options) {
  RequireTag(image_db, DatabaseTag::ImageOnly());
  RetrievalResult r;
  r.query_id = query_id;
  r.strategy = SearchStrategy::kImageOnly;
  r.hits = Search(image_db, query, k, query_id, options);
  return r;
}

RetrievalResult SearchAttribute(const std::string& query_id,
                                std::span<const float> query, AttributeId a,
                                const EmbeddingDatabase& attribute_db,
                                std::size_t k, const SearchOptions& options) {
  RequireTag(attribute_db, DatabaseTag::ForAttribute(a));
  RetrievalResult r;
  r.query_id = query_id;
  r.strategy = SearchStrategy::kAttribute;
  r.attribute = a;
  r.hits = Search(attribute_db, query, k, query_id, options);
  return r;
}

RetrievalResult RerankCandidates(const std::string& query_id,
                                 std::span<const Hit> stage1,
                                 std::span<const float> attribute_query,
                                 AttributeId a, int dim,
                                 const CandidateEmbedder& candidates,
                                 std::size_t k) {
  if (k > stage1.size()) {
    throw InvalidArgumentError("k (" + std::to_string(k) + ") exceeds b (" +
                               std::to_string(stage1.size()) + ")");
  }
  std::vector<std::string> ids;
  std::vector<float> matrix;
  ids.reserve(stage1.size());
  matrix.reserve(stage1.size() * static_cast<std::size_t>(dim));
  for (const Hit& h : stage1) {
    const EmbeddingVector v = candidates.Embed(h.row, a);
    if (v.size() != static_cast<std::size_t>(dim)) {
      throw DataError("candidate embedding for " + h.id + " has dimension " +
                      std::to_string(v.size()));
    }
    ids.push_back(h.id);
    matrix.insert(matrix.end(), v.begin(), v.end());
  }
  const EmbeddingDatabase temporary(DatabaseTag::ForAttribute(a), dim,
                                    std::move(ids), std::move(matrix));
  RetrievalResult r;
  r.query_id = query_id;
  r.strategy = SearchStrategy::kHierarchical;
  r.attribute = a;
  r.b = stage1.size();
  r.hits = TopK(temporary, attribute_query, k);
  // Report rows of the stage-1 database rather than the temporary one.
  for (Hit& h : r.hits) h.row = stage1[h.row].row;
  return r;
}

RetrievalResult SearchHierarchical(const std::string& query_id,
                                   std::span<const float> image_query,
                                   std::span<const float> attribute_query,
                                   AttributeId a, const EmbeddingDatabase& image_db,
                                   const CandidateEmbedder& candidates,
                                   std::size_t k, std::size_t b,
                                   const SearchOptions& options) {
  RequireTag(image_db, DatabaseTag::ImageOnly());
  if (k > b) {
    throw InvalidArgumentError("k (" + std::to_string(k) + ") exceeds b (" +
                               std::to_string(b) + ")");
  }
  if (b > image_db.size()) {
    throw InvalidArgumentError("b (" + std::to_string(b) +
                               ") exceeds the database size (" +
                               std::to_string(image_db.size()) + ")");
  }
  const std::vector<Hit> stage1 = Search(image_db, image_query, b, query_id, options);
  return RerankCandidates(query_id, stage1, attribute_query, a, image_db.dim(),
                          candidates, k);
}

RetrievalResult SearchImageOnly(const LesionImage& query,
                                const EmbeddingProvider& provider,
                                const EmbeddingDatabase& image_db, std::size_t k,
                                const SearchOptions& options) {
  return SearchImageOnly(query.image_id, provider.EmbedImage(query), image_db, k,
                         options);
}

RetrievalResult SearchAttribute(const LesionImage& query, AttributeId a,
                                const EmbeddingProvider& provider,
                                const EmbeddingDatabase& attribute_db,
                                std::size_t k, const SearchOptions& options) {
  return SearchAttribute(query.image_id, provider.EmbedImageAttribute(query, a), a,
                         attribute_db, k, options);
}

RetrievalResult SearchHierarchical(const LesionImage& query, AttributeId a,
                                   const EmbeddingProvider& provider,
                                   const EmbeddingDatabase& image_db,
                                   const CandidateEmbedder& candidates,
                                   std::size_t k, std::size_t b,
                                   const SearchOptions& options) {
  return SearchHierarchical(query.image_id, provider.EmbedImage(query),
                            provider.EmbedImageAttribute(query, a), a, image_db,
                            candidates, k, b, options);
}

nlohmann::json RetrievalResultToJson(const RetrievalResult& result) {
  nlohmann::json j;
  j["query_id"] = result.query_id;
  j["strategy"] = SearchStrategyName(result.strategy);
  if (result.attribute) j["attribute"] = AttributeName(*result.attribute);
  if (result.strategy == SearchStrategy::kHierarchical) j["b"] = result.b;
  nlohmann::json hits = nlohmann::json::array();
  for (const Hit& h : result.hits) {
    hits.push_back({{"id", h.id}, {"similarity", h.similarity}});
  }
  j["hits"] = std::move(hits);
  return j;
}

}  // namespace lesionseek
