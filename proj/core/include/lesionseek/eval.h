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

#ifndef LESIONSEEK_EVAL_H_
#define LESIONSEEK_EVAL_H_

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "lesionseek/attribute.h"
#include "lesionseek/embedding.h"
#include "lesionseek/retrieval.h"
#include "lesionseek/vector_store.h"

namespace lesionseek {

// Midrank percentile: 100 * (count_less + count_equal / 2) / N. Throws
// InvalidArgumentError for an empty reference or a NaN diff.
double PercentileRank(double diff, std::span<const double> reference);
// Same, for a reference sorted ascending (binary search).
double PercentileRankSorted(double diff, std::span<const double> sorted_reference);

// (other[a] - q[a])^2 for every element of `others`.
std::vector<double> AttributeDiffs(const AttributeVector& q,
                                   std::span<const AttributeVector> others,
                                   AttributeId a);

// Coefficient of determination 1 - SS_res / SS_tot, with SS_tot about the
// arithmetic mean sum(truths) / n. Throws InvalidArgumentError for unequal
// lengths or fewer than two pairs, and "zero variance" when all truths are
// equal.
double RSquared(std::span<const double> predictions, std::span<const double> truths);

// Linear-interpolation quantile of sorted data (the common "type 7"
// definition); p in [0, 1]. Requires nonempty input.
double QuantileSorted(std::span<const double> sorted, double p);

struct SummaryStats {
  std::size_t count = 0;
  double median = 0.0;
  double q1 = 0.0;
  double q3 = 0.0;
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
};

// Exact statistics over all values (copies and sorts). Requires nonempty.
SummaryStats Summarize(std::span<const double> values);

enum class EvalStrategy { kAttribute, kHierarchical, kImageOnly, kUntuned };
inline constexpr std::array<EvalStrategy, 4> kAllEvalStrategies = {
    EvalStrategy::kAttribute, EvalStrategy::kHierarchical,
    EvalStrategy::kImageOnly, EvalStrategy::kUntuned};

const char* EvalStrategyName(EvalStrategy s);  // "attr", "hier", "image", "untuned"
EvalStrategy EvalStrategyFromName(std::string_view name);
// Comma-separated list of names, e.g. "attr,hier,image,untuned".
std::vector<EvalStrategy> ParseEvalStrategies(std::string_view list);

struct PercentileRecord {
  std::string query_id;
  AttributeId attribute = AttributeId::kAreaMM2;
  EvalStrategy strategy = EvalStrategy::kAttribute;
  std::string retrieved_id;
  int rank = 1;  // 1..k
  double percentile = 0.0;
};

struct StrategySummary {
  AttributeId attribute = AttributeId::kAreaMM2;
  EvalStrategy strategy = EvalStrategy::kAttribute;
  SummaryStats stats;
};

struct EvalReport {
  std::size_t k = 0;
  std::size_t b = 0;
  std::size_t n_train = 0;
  std::size_t n_test = 0;
  std::vector<EvalStrategy> strategies;
  // Ordered by query, then strategy (as requested), then attribute, then rank.
  std::vector<PercentileRecord> records;
  // One entry per (attribute, strategy), attribute-major.
  std::vector<StrategySummary> summary;
  // Per attribute, when predictions were supplied.
  std::array<std::optional<double>, kAttributeCount> r_squared{};

  // Throws InvalidArgumentError if the pair was not evaluated.
  const SummaryStats& Stats(AttributeId a, EvalStrategy s) const;
};

// Everything the benchmark reads. Databases must be built over the
// training images; hits are mapped back to training attributes by id.
struct BenchmarkInputs {
  std::vector<std::string> train_ids;
  std::vector<AttributeVector> train_attributes;
  std::vector<std::string> test_ids;
  std::vector<AttributeVector> test_attributes;
  ImageLoader load_test;

  const EmbeddingProvider* tuned = nullptr;    // attr, hier, image
  const EmbeddingProvider* untuned = nullptr;  // untuned
  const EmbeddingDatabase* image_db = nullptr;
  std::array<const EmbeddingDatabase*, kAttributeCount> attribute_dbs{};
  const EmbeddingDatabase* untuned_db = nullptr;
  // Stage-2 source for hierarchical search. When null, rows of
  // attribute_dbs are used.
  const CandidateEmbedder* candidates = nullptr;
};

struct BenchmarkOptions {
  std::vector<EvalStrategy> strategies{kAllEvalStrategies.begin(),
                                       kAllEvalStrategies.end()};
  std::size_t k = 5;
  std::size_t b = 200;
  bool exclude_self = true;
  int threads = 1;
};

// For each test query, strategy and attribute: retrieve the top-k training
// images, then rank each hit's squared attribute difference against the
// differences between the query and every training image. Queries run
// concurrently; the report does not depend on the thread count. Throws
// InvalidArgumentError when a requested strategy lacks its provider or
// database.
EvalReport RunRetrievalBenchmark(const BenchmarkInputs& inputs,
                                 const BenchmarkOptions& options);

nlohmann::json EvalReportToJson(const EvalReport& report);
// Header: query_id,attribute,strategy,retrieved_id,rank,percentile
void WritePercentileCsv(const std::filesystem::path& path,
                        std::span<const PercentileRecord> records);

// Per-attribute R^2 of predicted against true values. `predictions[i]`
// holds the predicted values for truths[i]; attributes with fewer than two
// predictions are left empty. Zero-variance truths raise as in RSquared.
std::array<std::optional<double>, kAttributeCount> AttributeRSquared(
    std::span<const std::array<std::optional<double>, kAttributeCount>> predictions,
    std::span<const AttributeVector> truths);

}  // namespace lesionseek

#endif  // LESIONSEEK_EVAL_H_
