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

#include "lesionseek/eval.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <unordered_map>

#include "lesionseek/errors.h"
#include "lesionseek/parallel.h"

namespace lesionseek {
namespace {

std::string ShortestDouble(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

bool Uses(const std::vector<EvalStrategy>& list, EvalStrategy s) {
  return std::find(list.begin(), list.end(), s) != list.end();
}

void RequireDb(const EmbeddingDatabase* db, DatabaseTag tag, std::size_t n_train,
               const char* strategy) {
  if (db == nullptr) {
    throw InvalidArgumentError(std::string("strategy ") + strategy +
                               " needs the " + tag.name() + " database");
  }
  if (!(db->tag() == tag)) {
    throw InvalidArgumentError("database tagged " + db->tag().name() +
                               " supplied where " + tag.name() + " is required");
  }
  if (db->size() != n_train) {
    throw InvalidArgumentError("database " + tag.name() + " holds " +
                               std::to_string(db->size()) + " rows, expected " +
                               std::to_string(n_train) + " training images");
  }
}

}  // namespace

double PercentileRankSorted(double diff, std::span<const double> sorted_reference) {
  if (sorted_reference.empty()) {
    throw InvalidArgumentError("percentile rank needs a nonempty reference");
  }
  if (std::isnan(diff)) throw InvalidArgumentError("percentile rank of NaN");
  const auto [lo, hi] =
      std::equal_range(sorted_reference.begin(), sorted_reference.end(), diff);
  const double less = static_cast<double>(lo - sorted_reference.begin());
  const double equal = static_cast<double>(hi - lo);
  return 100.0 * (less + 0.5 * equal) / static_cast<double>(sorted_reference.size());
}

double PercentileRank(double diff, std::span<const double> reference) {
  std::vector<double> sorted(reference.begin(), reference.end());
  std::sort(sorted.begin(), sorted.end());
  return PercentileRankSorted(diff, sorted);
}

std::vector<double> AttributeDiffs(const AttributeVector& q,
                                   std::span<const AttributeVector> others,
                                   AttributeId a) {
  const double qa = q[a];
  std::vector<double> out;
  out.reserve(others.size());
  for (const AttributeVector& o : others) {
    const double d = o[a] - qa;
    out.push_back(d * d);
  }
  return out;
}

double RSquared(std::span<const double> predictions, std::span<const double> truths) {
  if (predictions.size() != truths.size()) {
    throw InvalidArgumentError("predictions and truths differ in length");
  }
  if (truths.size() < 2) throw InvalidArgumentError("R^2 needs at least two pairs");
  double sum = 0.0;
  for (double t : truths) sum += t;
  const double mean = sum / static_cast<double>(truths.size());
  double ss_res = 0.0;
  double ss_tot = 0.0;
  for (std::size_t i = 0; i < truths.size(); ++i) {
    const double r = truths[i] - predictions[i];
    const double t = truths[i] - mean;
    ss_res += r * r;
    ss_tot += t * t;
  }
  if (!(ss_tot > 0.0)) throw InvalidArgumentError("zero variance in truths");
  return 1.0 - ss_res / ss_tot;
}

double QuantileSorted(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw InvalidArgumentError("quantile of empty data");
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgumentError("quantile p outside [0, 1]");
  const double h = p * static_cast<double>(sorted.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = h - static_cast<double>(lo);
  if (frac == 0.0) return sorted[lo];
  return (1.0 - frac) * sorted[lo] + frac * sorted[hi];
}

SummaryStats Summarize(std::span<const double> values) {
  if (values.empty()) throw InvalidArgumentError("cannot summarize no values");
  std::vector<double> s(values.begin(), values.end());
  std::sort(s.begin(), s.end());
  SummaryStats out;
  out.count = s.size();
  out.median = QuantileSorted(s, 0.5);
  out.q1 = QuantileSorted(s, 0.25);
  out.q3 = QuantileSorted(s, 0.75);
  double sum = 0.0;
  for (double v : values) sum += v;
  out.mean = sum / static_cast<double>(s.size());
  out.min = s.front();
  out.max = s.back();
  return out;
}

const char* EvalStrategyName(EvalStrategy s) {
  switch (s) {
    case EvalStrategy::kAttribute:
      return "attr";
    case EvalStrategy::kHierarchical:
      return "hier";
    case EvalStrategy::kImageOnly:
      return "image";
    case EvalStrategy::kUntuned:
      return "untuned";
  }
  return "?";
}

EvalStrategy EvalStrategyFromName(std::string_view name) {
  for (EvalStrategy s : kAllEvalStrategies) {
    if (name == EvalStrategyName(s)) return s;
  }
  throw InvalidArgumentError("unknown strategy: " + std::string(name));
}

std::vector<EvalStrategy> ParseEvalStrategies(std::string_view list) {
  std::vector<EvalStrategy> out;
  std::size_t pos = 0;
  while (pos <= list.size()) {
    const std::size_t comma = std::min(list.find(',', pos), list.size());
    const EvalStrategy s = EvalStrategyFromName(list.substr(pos, comma - pos));
    if (Uses(out, s)) {
      throw InvalidArgumentError("strategy listed twice: " +
                                 std::string(EvalStrategyName(s)));
    }
    out.push_back(s);
    pos = comma + 1;
  }
  return out;
}

const SummaryStats& EvalReport::Stats(AttributeId a, EvalStrategy s) const {
  for (const StrategySummary& e : summary) {
    if (e.attribute == a && e.strategy == s) return e.stats;
  }
  throw InvalidArgumentError(std::string("strategy ") + EvalStrategyName(s) +
                             " was not evaluated for " + std::string(AttributeName(a)));
}

EvalReport RunRetrievalBenchmark(const BenchmarkInputs& in,
                                 const BenchmarkOptions& options) {
  const std::size_t n_train = in.train_ids.size();
  const std::size_t n_test = in.test_ids.size();
  if (n_train == 0) throw InvalidArgumentError("training set is empty");
  if (n_test == 0) throw InvalidArgumentError("test set is empty");
  if (in.train_attributes.size() != n_train || in.test_attributes.size() != n_test) {
    throw InvalidArgumentError("attribute lists do not match the id lists");
  }
  if (options.strategies.empty()) throw InvalidArgumentError("no strategies requested");
  if (options.k == 0) throw InvalidArgumentError("k must be positive");

  const bool use_attr = Uses(options.strategies, EvalStrategy::kAttribute);
  const bool use_hier = Uses(options.strategies, EvalStrategy::kHierarchical);
  const bool use_image = Uses(options.strategies, EvalStrategy::kImageOnly);
  const bool use_untuned = Uses(options.strategies, EvalStrategy::kUntuned);
  const bool use_tuned = use_attr || use_hier || use_image;

  if (!in.load_test) throw InvalidArgumentError("no loader for test images");
  if (use_tuned && in.tuned == nullptr) {
    throw InvalidArgumentError("tuned strategies need a tuned provider");
  }
  if (use_untuned && in.untuned == nullptr) {
    throw InvalidArgumentError("strategy untuned needs an untuned provider");
  }
  if (use_image || use_hier) {
    RequireDb(in.image_db, DatabaseTag::ImageOnly(), n_train,
              use_hier ? "hier" : "image");
  }
  if (use_attr || (use_hier && in.candidates == nullptr)) {
    for (AttributeId a : AllAttributes()) {
      RequireDb(in.attribute_dbs[AttributeIndex(a)], DatabaseTag::ForAttribute(a),
                n_train, use_attr ? "attr" : "hier");
    }
  }
  if (use_untuned) RequireDb(in.untuned_db, DatabaseTag::ImageOnly(), n_train, "untuned");
  if (use_hier) {
    if (options.k > options.b) {
      throw InvalidArgumentError("k (" + std::to_string(options.k) + ") exceeds b (" +
                                 std::to_string(options.b) + ")");
    }
    if (options.b > n_train) {
      throw InvalidArgumentError("b (" + std::to_string(options.b) +
                                 ") exceeds the training set size");
    }
  }

  std::optional<DatabaseCandidateEmbedder> db_candidates;
  const CandidateEmbedder* candidates = in.candidates;
  if (use_hier && candidates == nullptr) {
    db_candidates.emplace(*in.image_db, std::vector<const EmbeddingDatabase*>(
                                            in.attribute_dbs.begin(),
                                            in.attribute_dbs.end()));
    candidates = &*db_candidates;
  }

  std::unordered_map<std::string, std::size_t> train_index;
  train_index.reserve(n_train);
  for (std::size_t i = 0; i < n_train; ++i) {
    if (!train_index.emplace(in.train_ids[i], i).second) {
      throw InvalidArgumentError("duplicate training id " + in.train_ids[i]);
    }
  }

  const SearchOptions search{options.exclude_self};
  std::vector<std::vector<PercentileRecord>> per_query(n_test);
  ParallelFor(n_test, options.threads, [&](std::size_t qi) {
    const std::string& qid = in.test_ids[qi];
    const AttributeVector& qattr = in.test_attributes[qi];
    const LesionImage image = in.load_test(qi);

    std::array<std::vector<double>, kAttributeCount> reference;
    for (AttributeId a : AllAttributes()) {
      auto& ref = reference[AttributeIndex(a)];
      ref = AttributeDiffs(qattr, in.train_attributes, a);
      std::sort(ref.begin(), ref.end());
    }

    std::vector<EmbeddingVector> tuned;
    if (use_tuned) tuned = in.tuned->EmbedAll(image);

    auto emit = [&](EvalStrategy s, AttributeId a, const std::vector<Hit>& hits,
                    std::vector<PercentileRecord>& out) {
      for (std::size_t r = 0; r < hits.size(); ++r) {
        const auto it = train_index.find(hits[r].id);
        if (it == train_index.end()) {
          throw DataError("retrieved id " + hits[r].id + " is not a training image");
        }
        const double d = in.train_attributes[it->second][a] - qattr[a];
        PercentileRecord rec;
        rec.query_id = qid;
        rec.attribute = a;
        rec.strategy = s;
        rec.retrieved_id = hits[r].id;
        rec.rank = static_cast<int>(r + 1);
        rec.percentile = PercentileRankSorted(d * d, reference[AttributeIndex(a)]);
        out.push_back(std::move(rec));
      }
    };

    std::vector<PercentileRecord>& out = per_query[qi];
    out.reserve(options.strategies.size() * kAttributeCount * options.k);
    for (EvalStrategy s : options.strategies) {
      switch (s) {
        case EvalStrategy::kAttribute:
          for (AttributeId a : AllAttributes()) {
            const auto r = SearchAttribute(qid, tuned[1 + AttributeIndex(a)], a,
                                           *in.attribute_dbs[AttributeIndex(a)],
                                           options.k, search);
            emit(s, a, r.hits, out);
          }
          break;
        case EvalStrategy::kHierarchical: {
          const auto stage1 = SearchImageOnly(qid, tuned[0], *in.image_db,
                                              options.b, search);
          for (AttributeId a : AllAttributes()) {
            const auto r = RerankCandidates(qid, stage1.hits,
                                            tuned[1 + AttributeIndex(a)], a,
                                            in.image_db->dim(), *candidates, options.k);
            emit(s, a, r.hits, out);
          }
          break;
        }
        case EvalStrategy::kImageOnly: {
          const auto r = SearchImageOnly(qid, tuned[0], *in.image_db, options.k, search);
          for (AttributeId a : AllAttributes()) emit(s, a, r.hits, out);
          break;
        }
        case EvalStrategy::kUntuned: {
          const auto r = SearchImageOnly(qid, in.untuned->EmbedImage(image),
                                         *in.untuned_db, options.k, search);
          for (AttributeId a : AllAttributes()) emit(s, a, r.hits, out);
          break;
        }
      }
    }
  });

  EvalReport report;
  report.k = options.k;
  report.b = use_hier ? options.b : 0;
  report.n_train = n_train;
  report.n_test = n_test;
  report.strategies = options.strategies;
  std::size_t total = 0;
  for (const auto& q : per_query) total += q.size();
  report.records.reserve(total);
  for (auto& q : per_query) {
    std::move(q.begin(), q.end(), std::back_inserter(report.records));
  }

  std::vector<std::vector<double>> groups(kAttributeCount * kAllEvalStrategies.size());
  auto group = [](AttributeId a, EvalStrategy s) {
    return static_cast<std::size_t>(AttributeIndex(a)) * kAllEvalStrategies.size() +
           static_cast<std::size_t>(s);
  };
  for (const PercentileRecord& r : report.records) {
    groups[group(r.attribute, r.strategy)].push_back(r.percentile);
  }
  for (AttributeId a : AllAttributes()) {
    for (EvalStrategy s : options.strategies) {
      report.summary.push_back({a, s, Summarize(groups[group(a, s)])});
    }
  }
  return report;
}

nlohmann::json EvalReportToJson(const EvalReport& report) {
  nlohmann::json j;
  j["k"] = report.k;
  if (report.b > 0) j["b"] = report.b;
  j["n_train"] = report.n_train;
  j["n_test"] = report.n_test;
  j["records"] = report.records.size();
  nlohmann::json strategies = nlohmann::json::array();
  for (EvalStrategy s : report.strategies) strategies.push_back(EvalStrategyName(s));
  j["strategies"] = std::move(strategies);
  nlohmann::json summary = nlohmann::json::array();
  for (const StrategySummary& e : report.summary) {
    summary.push_back({{"attribute", AttributeName(e.attribute)},
                       {"strategy", EvalStrategyName(e.strategy)},
                       {"count", e.stats.count},
                       {"median", e.stats.median},
                       {"q1", e.stats.q1},
                       {"q3", e.stats.q3},
                       {"mean", e.stats.mean},
                       {"min", e.stats.min},
                       {"max", e.stats.max}});
  }
  j["summary"] = std::move(summary);
  nlohmann::json r2 = nlohmann::json::object();
  for (AttributeId a : AllAttributes()) {
    const auto& v = report.r_squared[AttributeIndex(a)];
    if (v) r2[std::string(AttributeName(a))] = *v;
  }
  if (!r2.empty()) j["r_squared"] = std::move(r2);
  return j;
}

void WritePercentileCsv(const std::filesystem::path& path,
                        std::span<const PercentileRecord> records) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  out << "query_id,attribute,strategy,retrieved_id,rank,percentile\n";
  for (const PercentileRecord& r : records) {
    out << r.query_id << ',' << AttributeName(r.attribute) << ','
        << EvalStrategyName(r.strategy) << ',' << r.retrieved_id << ',' << r.rank
        << ',' << ShortestDouble(r.percentile) << '\n';
  }
  if (!out) throw DataError("write failed: " + path.string());
}

std::array<std::optional<double>, kAttributeCount> AttributeRSquared(
    std::span<const std::array<std::optional<double>, kAttributeCount>> predictions,
    std::span<const AttributeVector> truths) {
  if (predictions.size() != truths.size()) {
    throw InvalidArgumentError("predictions and truths differ in length");
  }
  std::array<std::optional<double>, kAttributeCount> out{};
  for (AttributeId a : AllAttributes()) {
    const std::size_t ai = static_cast<std::size_t>(AttributeIndex(a));
    std::vector<double> p;
    std::vector<double> t;
    for (std::size_t i = 0; i < truths.size(); ++i) {
      if (predictions[i][ai]) {
        p.push_back(*predictions[i][ai]);
        t.push_back(truths[i][a]);
      }
    }
    if (p.size() < 2) continue;
    try {
      out[ai] = RSquared(p, t);
    } catch (const InvalidArgumentError& e) {
      throw InvalidArgumentError(std::string(AttributeName(a)) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace lesionseek
