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

#ifndef LESIONSEEK_EMBEDDING_H_
#define LESIONSEEK_EMBEDDING_H_

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lesionseek/attribute.h"
#include "lesionseek/lesion_image.h"

namespace lesionseek {

// Unit-norm embedding stored in single precision.
using EmbeddingVector = std::vector<float>;

// Loads the i-th image of some collection.
using ImageLoader = std::function<LesionImage(std::size_t)>;

// Which embedding a database holds: the image-only embedding or the
// embedding specialised to one attribute. The wire code is 0 for
// image-only and attribute_index + 1 otherwise.
class DatabaseTag {
 public:
  static DatabaseTag ImageOnly() { return DatabaseTag(); }
  static DatabaseTag ForAttribute(AttributeId a) { return DatabaseTag(a); }
  // Throws FormatError(kBadTag) for codes above 16.
  static DatabaseTag FromCode(std::uint32_t code);
  // "image" or an attribute name; throws InvalidArgumentError otherwise.
  static DatabaseTag FromName(std::string_view name);

  bool is_image_only() const { return !attribute_.has_value(); }
  // Requires !is_image_only().
  AttributeId attribute() const { return *attribute_; }
  std::uint32_t code() const {
    return attribute_ ? static_cast<std::uint32_t>(AttributeIndex(*attribute_)) + 1
                      : 0;
  }
  std::string name() const;

  friend bool operator==(const DatabaseTag&, const DatabaseTag&) = default;

 private:
  DatabaseTag() = default;
  explicit DatabaseTag(AttributeId a) : attribute_(a) {}

  std::optional<AttributeId> attribute_;
};

// Source of image embeddings. Implementations are immutable after
// construction and safe to call concurrently. Every returned vector has
// dim() entries and unit L2 norm.
class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;

  virtual int dim() const = 0;
  // General-appearance embedding of the image.
  virtual EmbeddingVector EmbedImage(const LesionImage& image) const = 0;
  // Embedding of the image specialised towards attribute `a`.
  virtual EmbeddingVector EmbedImageAttribute(const LesionImage& image,
                                              AttributeId a) const = 0;
  // Element 0 is EmbedImage(image); element 1 + i is
  // EmbedImageAttribute(image, attribute i). Providers override this when
  // the seventeen embeddings share work.
  virtual std::vector<EmbeddingVector> EmbedAll(const LesionImage& image) const;

  EmbeddingVector Embed(const LesionImage& image, DatabaseTag tag) const;
};

// Scales `raw` to unit length. Throws DataError for zero or non-finite
// input (cosine similarity is undefined there).
EmbeddingVector Normalize(std::span<const double> raw);

// Cosine similarity computed in double precision.
double Cosine(std::span<const float> a, std::span<const float> b);

inline constexpr int kPatchGrid = 4;
inline constexpr int kVisualFeatureCount = 2 * kPatchGrid * kPatchGrid;

// Mean and standard deviation of grayscale intensity over a 4x4 grid of
// patches, in row-major patch order (means first, then deviations).
std::vector<double> PatchGridFeatures(const LesionImage& image);

// Per-feature location and spread over a training corpus.
struct CorpusStats {
  std::array<double, kAttributeCount> attr_mean{};
  std::array<double, kAttributeCount> attr_sd{};
  std::vector<double> visual_mean;
  std::vector<double> visual_sd;
};

// Population statistics; requires at least one row in each input.
CorpusStats ComputeCorpusStats(std::span<const AttributeVector> attributes,
                               std::span<const std::vector<double>> visual);

struct TunedSimConfig {
  int dim = 64;
  double noise_sd = 0.05;
  double attr_gain = 4.0;
  std::uint64_t seed = 0;
};

// Stand-in for an attribute-tuned model. The raw embedding concatenates
// the z-scored 16 attributes of the image with d-16 visual features
// (z-scored patch statistics, zero-padded or randomly projected), plus
// Gaussian noise derived from the image content. The attribute-specialised
// variant multiplies the chosen attribute's dimension by attr_gain and the
// other attribute dimensions by 1/attr_gain before normalisation.
class TunedSimProvider : public EmbeddingProvider {
 public:
  // Throws InvalidArgumentError for dim < 32, negative noise, or
  // attr_gain <= 0. Features with zero corpus spread are zeroed and a
  // warning is recorded.
  TunedSimProvider(CorpusStats stats, TunedSimConfig config);

  int dim() const override { return config_.dim; }
  EmbeddingVector EmbedImage(const LesionImage& image) const override;
  EmbeddingVector EmbedImageAttribute(const LesionImage& image,
                                      AttributeId a) const override;
  std::vector<EmbeddingVector> EmbedAll(const LesionImage& image) const override;

  const TunedSimConfig& config() const { return config_; }
  const CorpusStats& stats() const { return stats_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  std::vector<double> RawFeatures(const LesionImage& image) const;
  EmbeddingVector Specialise(std::vector<double> raw, AttributeId a) const;

  CorpusStats stats_;
  TunedSimConfig config_;
  std::vector<std::string> warnings_;
  std::array<bool, kAttributeCount> attr_live_{};
  std::vector<bool> visual_live_;
  // (dim - 16) x 32 row-major; empty when visual features are zero-padded.
  std::vector<double> projection_;
};

struct UntunedSimConfig {
  int dim = 64;
  std::uint64_t seed = 0;
};

inline constexpr int kUntunedGrid = 16;

// Stand-in for a model that was never tuned on attributes: a seeded random
// projection of the 16x16 downsampled grayscale image. The attribute
// variant ignores the attribute.
class UntunedSimProvider : public EmbeddingProvider {
 public:
  explicit UntunedSimProvider(UntunedSimConfig config);

  int dim() const override { return config_.dim; }
  EmbeddingVector EmbedImage(const LesionImage& image) const override;
  EmbeddingVector EmbedImageAttribute(const LesionImage& image,
                                      AttributeId a) const override;

  const UntunedSimConfig& config() const { return config_; }

 private:
  UntunedSimConfig config_;
  std::vector<double> projection_;  // dim x 256 row-major
};

// Sidecar descriptions of the reference providers so a database directory
// can recreate the provider that filled it.
nlohmann::json ProviderToJson(const TunedSimProvider& provider);
nlohmann::json ProviderToJson(const UntunedSimProvider& provider);
// Dispatches on the "kind" field ("tuned_sim" or "untuned_sim").
std::unique_ptr<EmbeddingProvider> ProviderFromJson(const nlohmann::json& j);

}  // namespace lesionseek

#endif  // LESIONSEEK_EMBEDDING_H_
