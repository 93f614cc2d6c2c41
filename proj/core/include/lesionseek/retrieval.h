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

#ifndef LESIONSEEK_RETRIEVAL_H_
#define LESIONSEEK_RETRIEVAL_H_

#include <array>
#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lesionseek/embedding.h"
#include "lesionseek/vector_store.h"

namespace lesionseek {

enum class SearchStrategy { kImageOnly, kAttribute, kHierarchical };

const char* SearchStrategyName(SearchStrategy s);  // "image", "attr", "hier"
SearchStrategy SearchStrategyFromName(std::string_view name);

struct RetrievalResult {
  std::string query_id;
  SearchStrategy strategy = SearchStrategy::kImageOnly;
  std::optional<AttributeId> attribute;  // set for kAttribute, kHierarchical
  std::size_t b = 0;                     // kHierarchical only
  std::vector<Hit> hits;
};

struct SearchOptions {
  // Drop the query's own id from the results when it is a database member.
  bool exclude_self = false;
};

// Attribute embeddings of database members, addressed by row of the
// image-only database, used to fill the stage-2 database of hierarchical
// search. Implementations must be safe to call concurrently.
class CandidateEmbedder {
 public:
  virtual ~CandidateEmbedder() = default;
  virtual EmbeddingVector Embed(std::size_t row, AttributeId a) const = 0;
};

// Embeds the candidate image on every call.
class ProviderCandidateEmbedder : public CandidateEmbedder {
 public:
  ProviderCandidateEmbedder(const EmbeddingProvider& provider, ImageLoader load)
      : provider_(provider), load_(std::move(load)) {}
  EmbeddingVector Embed(std::size_t row, AttributeId a) const override;

 private:
  const EmbeddingProvider& provider_;
  ImageLoader load_;
};

// Embeds each candidate at most once (all sixteen attributes together) and
// keeps the results.
class CachingCandidateEmbedder : public CandidateEmbedder {
 public:
  CachingCandidateEmbedder(const EmbeddingProvider& provider, ImageLoader load,
                           std::size_t rows);
  EmbeddingVector Embed(std::size_t row, AttributeId a) const override;

 private:
  const EmbeddingProvider& provider_;
  ImageLoader load_;
  std::unique_ptr<std::once_flag[]> once_;
  mutable std::vector<std::vector<EmbeddingVector>> cache_;
};

// Reads rows of prebuilt attribute databases. Every database must list the
// same ids in the same order as `image_db`.
class DatabaseCandidateEmbedder : public CandidateEmbedder {
 public:
  DatabaseCandidateEmbedder(const EmbeddingDatabase& image_db,
                            std::vector<const EmbeddingDatabase*> attribute_dbs);
  EmbeddingVector Embed(std::size_t row, AttributeId a) const override;

 private:
  std::array<const EmbeddingDatabase*, kAttributeCount> dbs_{};
};

// Embedding-level searches. `query_id` is used for self-exclusion and is
// copied into the result.
RetrievalResult SearchImageOnly(const std::string& query_id,
                                std::span<const float> query,
                                const EmbeddingDatabase& image_db, std::size_t k,
                                const SearchOptions& options = {});
RetrievalResult SearchAttribute(const std::string& query_id,
                                std::span<const float> query, AttributeId a,
                                const EmbeddingDatabase& attribute_db,
                                std::size_t k, const SearchOptions& options = {});
// Stage 1 takes the top-b rows of `image_db` for `image_query`; stage 2
// builds a temporary attribute-a database over exactly those rows and
// returns its top-k for `attribute_query`. Requires k <= b <= |image_db|.
RetrievalResult SearchHierarchical(const std::string& query_id,
                                   std::span<const float> image_query,
                                   std::span<const float> attribute_query,
                                   AttributeId a, const EmbeddingDatabase& image_db,
                                   const CandidateEmbedder& candidates,
                                   std::size_t k, std::size_t b,
                                   const SearchOptions& options = {});
// Stage 2 alone, over an already computed stage-1 hit list.
RetrievalResult RerankCandidates(const std::string& query_id,
                                 std::span<const Hit> stage1,
                                 std::span<const float> attribute_query,
                                 AttributeId a, int dim,
                                 const CandidateEmbedder& candidates,
                                 std::size_t k);

// Image-level searches: the query image is embedded with `provider`.
RetrievalResult SearchImageOnly(const LesionImage& query,
                                const EmbeddingProvider& provider,
                                const EmbeddingDatabase& image_db, std::size_t k,
                                const SearchOptions& options = {});
RetrievalResult SearchAttribute(const LesionImage& query, AttributeId a,
                                const EmbeddingProvider& provider,
                                const EmbeddingDatabase& attribute_db,
                                std::size_t k, const SearchOptions& options = {});
RetrievalResult SearchHierarchical(const LesionImage& query, AttributeId a,
                                   const EmbeddingProvider& provider,
                                   const EmbeddingDatabase& image_db,
                                   const CandidateEmbedder& candidates,
                                   std::size_t k, std::size_t b,
                                   const SearchOptions& options = {});

nlohmann::json RetrievalResultToJson(const RetrievalResult& result);

}  // namespace lesionseek

#endif  // LESIONSEEK_RETRIEVAL_H_
