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

#include "lesionseek/embedding.h"

#include <cmath>
#include <random>

#include <spdlog/spdlog.h>

#include "lesionseek/attribute_oracle.h"
#include "lesionseek/color.h"
#include "lesionseek/errors.h"
#include "lesionseek/rng.h"

namespace lesionseek {
namespace {

constexpr double kMinSpread = 1e-12;

// Content key of an image: a model's output depends only on what it sees.
std::uint64_t ContentHash(const LesionImage& image) {
  const auto pixels = image.pixels.pixels();
  std::uint64_t h = Fnv1a64(std::string_view(
      reinterpret_cast<const char*>(pixels.data()), pixels.size_bytes()));
  const auto cells = image.mask.cells();
  h = Fnv1a64(std::string_view(reinterpret_cast<const char*>(cells.data()),
                               cells.size()),
              h);
  return Fnv1a64(std::string_view(
                     reinterpret_cast<const char*>(&image.scale_mm_per_px),
                     sizeof(double)),
                 h);
}

std::vector<double> GaussianMatrix(std::size_t rows, std::size_t cols,
                                   std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> m(rows * cols);
  const double scale = 1.0 / std::sqrt(static_cast<double>(rows));
  for (auto& v : m) v = gauss(rng) * scale;
  return m;
}

}  // namespace

DatabaseTag DatabaseTag::FromCode(std::uint32_t code) {
  if (code == 0) return ImageOnly();
  if (code > kAttributeCount) {
    throw FormatError(FormatError::Kind::kBadTag,
                      "bad tag: " + std::to_string(code));
  }
  return ForAttribute(AttributeFromIndex(static_cast<int>(code) - 1));
}

DatabaseTag DatabaseTag::FromName(std::string_view name) {
  if (name == "image" || name == "image-only") return ImageOnly();
  return ForAttribute(AttributeFromName(name));
}

std::string DatabaseTag::name() const {
  return attribute_ ? std::string(AttributeName(*attribute_)) : "image";
}

std::vector<EmbeddingVector> EmbeddingProvider::EmbedAll(
    const LesionImage& image) const {
  std::vector<EmbeddingVector> out;
  out.reserve(kAttributeCount + 1);
  out.push_back(EmbedImage(image));
  for (AttributeId a : AllAttributes()) out.push_back(EmbedImageAttribute(image, a));
  return out;
}

EmbeddingVector EmbeddingProvider::Embed(const LesionImage& image,
                                         DatabaseTag tag) const {
  return tag.is_image_only() ? EmbedImage(image)
                             : EmbedImageAttribute(image, tag.attribute());
}

EmbeddingVector Normalize(std::span<const double> raw) {
  double ss = 0.0;
  for (double v : raw) ss += v * v;
  if (!std::isfinite(ss) || ss <= 0.0) {
    throw DataError("cannot normalise a zero or non-finite embedding");
  }
  const double inv = 1.0 / std::sqrt(ss);
  EmbeddingVector out(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    out[i] = static_cast<float>(raw[i] * inv);
  }
  return out;
}

double Cosine(std::span<const float> a, std::span<const float> b) {
  if (a.size() != b.size()) throw InvalidArgumentError("dimension mismatch");
  double dot = 0.0;
  double na = 0.0;
  double nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += static_cast<double>(a[i]) * b[i];
    na += static_cast<double>(a[i]) * a[i];
    nb += static_cast<double>(b[i]) * b[i];
  }
  return dot / std::sqrt(na * nb);
}

std::vector<double> PatchGridFeatures(const LesionImage& image) {
  const int h = image.pixels.height();
  const int w = image.pixels.width();
  std::vector<double> features(kVisualFeatureCount, 0.0);
  for (int pr = 0; pr < kPatchGrid; ++pr) {
    for (int pc = 0; pc < kPatchGrid; ++pc) {
      const int r0 = pr * h / kPatchGrid;
      const int r1 = (pr + 1) * h / kPatchGrid;
      const int c0 = pc * w / kPatchGrid;
      const int c1 = (pc + 1) * w / kPatchGrid;
      double sum = 0.0;
      double ss = 0.0;
      const double n = static_cast<double>((r1 - r0) * (c1 - c0));
      if (n <= 0.0) continue;
      for (int r = r0; r < r1; ++r) {
        for (int c = c0; c < c1; ++c) sum += Grayscale(image.pixels(r, c));
      }
      const double mean = sum / n;
      for (int r = r0; r < r1; ++r) {
        for (int c = c0; c < c1; ++c) {
          const double d = Grayscale(image.pixels(r, c)) - mean;
          ss += d * d;
        }
      }
      const int patch = pr * kPatchGrid + pc;
      features[patch] = mean;
      features[kPatchGrid * kPatchGrid + patch] = std::sqrt(ss / n);
    }
  }
  return features;
}

CorpusStats ComputeCorpusStats(std::span<const AttributeVector> attributes,
                               std::span<const std::vector<double>> visual) {
  if (attributes.empty() || visual.empty()) {
    throw InvalidArgumentError("corpus statistics need at least one image");
  }
  CorpusStats s;
  const double n = static_cast<double>(attributes.size());
  for (std::size_t k = 0; k < kAttributeCount; ++k) {
    double sum = 0.0;
    for (const auto& v : attributes) sum += v.values()[k];
    const double mean = sum / n;
    double ss = 0.0;
    for (const auto& v : attributes) {
      const double d = v.values()[k] - mean;
      ss += d * d;
    }
    s.attr_mean[k] = mean;
    s.attr_sd[k] = std::sqrt(ss / n);
  }
  const std::size_t dims = visual.front().size();
  const double m = static_cast<double>(visual.size());
  s.visual_mean.assign(dims, 0.0);
  s.visual_sd.assign(dims, 0.0);
  for (std::size_t k = 0; k < dims; ++k) {
    double sum = 0.0;
    for (const auto& v : visual) sum += v.at(k);
    const double mean = sum / m;
    double ss = 0.0;
    for (const auto& v : visual) ss += (v[k] - mean) * (v[k] - mean);
    s.visual_mean[k] = mean;
    s.visual_sd[k] = std::sqrt(ss / m);
  }
  return s;
}

TunedSimProvider::TunedSimProvider(CorpusStats stats, TunedSimConfig config)
    : stats_(std::move(stats)), config_(config) {
  if (config_.dim < 32) throw InvalidArgumentError("tuned_sim requires d >= 32");
  if (!(config_.noise_sd >= 0.0)) {
    throw InvalidArgumentError("noise_sd must be >= 0");
  }
  if (!(config_.attr_gain > 0.0)) {
    throw InvalidArgumentError("attr_gain must be positive");
  }
  if (stats_.visual_mean.size() != kVisualFeatureCount ||
      stats_.visual_sd.size() != kVisualFeatureCount) {
    throw InvalidArgumentError("corpus statistics have the wrong visual size");
  }
  for (AttributeId a : AllAttributes()) {
    const int i = AttributeIndex(a);
    attr_live_[i] = stats_.attr_sd[i] > kMinSpread;
    if (!attr_live_[i]) {
      warnings_.push_back("attribute " + std::string(AttributeName(a)) +
                          " has zero spread in corpus statistics; dimension "
                          "set to 0");
    }
  }
  visual_live_.resize(kVisualFeatureCount);
  for (int k = 0; k < kVisualFeatureCount; ++k) {
    visual_live_[k] = stats_.visual_sd[k] > kMinSpread;
    if (!visual_live_[k]) {
      warnings_.push_back("visual feature " + std::to_string(k) +
                          " has zero spread in corpus statistics; dimension "
                          "set to 0");
    }
  }
  for (const auto& w : warnings_) spdlog::warn("tuned_sim: {}", w);
  const int visual_dims = config_.dim - static_cast<int>(kAttributeCount);
  if (visual_dims < kVisualFeatureCount) {
    projection_ = GaussianMatrix(visual_dims, kVisualFeatureCount,
                                 StreamSeed(config_.seed, 0x70726f6aULL));
  }
}

std::vector<double> TunedSimProvider::RawFeatures(const LesionImage& image) const {
  const AttributeVector attrs = ComputeAttributes(image);
  const std::vector<double> visual = PatchGridFeatures(image);

  std::vector<double> raw(config_.dim, 0.0);
  for (std::size_t k = 0; k < kAttributeCount; ++k) {
    if (attr_live_[k]) {
      raw[k] = (attrs.values()[k] - stats_.attr_mean[k]) / stats_.attr_sd[k];
    }
  }
  std::array<double, kVisualFeatureCount> z{};
  for (int k = 0; k < kVisualFeatureCount; ++k) {
    if (visual_live_[k]) {
      z[k] = (visual[k] - stats_.visual_mean[k]) / stats_.visual_sd[k];
    }
  }
  const int visual_dims = config_.dim - static_cast<int>(kAttributeCount);
  if (projection_.empty()) {
    for (int k = 0; k < kVisualFeatureCount; ++k) raw[kAttributeCount + k] = z[k];
  } else {
    for (int r = 0; r < visual_dims; ++r) {
      double acc = 0.0;
      for (int k = 0; k < kVisualFeatureCount; ++k) {
        acc += projection_[static_cast<std::size_t>(r) * kVisualFeatureCount + k] *
               z[k];
      }
      raw[kAttributeCount + r] = acc;
    }
  }
  if (config_.noise_sd > 0.0) {
    std::mt19937_64 rng(StreamSeed(config_.seed, ContentHash(image)));
    std::normal_distribution<double> noise(0.0, config_.noise_sd);
    for (auto& v : raw) v += noise(rng);
  }
  return raw;
}

EmbeddingVector TunedSimProvider::Specialise(std::vector<double> raw,
                                             AttributeId a) const {
  const double gain = config_.attr_gain;
  for (std::size_t k = 0; k < kAttributeCount; ++k) {
    raw[k] *= (static_cast<int>(k) == AttributeIndex(a)) ? gain : 1.0 / gain;
  }
  return Normalize(raw);
}

EmbeddingVector TunedSimProvider::EmbedImage(const LesionImage& image) const {
  return Normalize(RawFeatures(image));
}

EmbeddingVector TunedSimProvider::EmbedImageAttribute(const LesionImage& image,
                                                      AttributeId a) const {
  return Specialise(RawFeatures(image), a);
}

std::vector<EmbeddingVector> TunedSimProvider::EmbedAll(
    const LesionImage& image) const {
  const std::vector<double> raw = RawFeatures(image);
  std::vector<EmbeddingVector> out;
  out.reserve(kAttributeCount + 1);
  out.push_back(Normalize(raw));
  for (AttributeId a : AllAttributes()) out.push_back(Specialise(raw, a));
  return out;
}

UntunedSimProvider::UntunedSimProvider(UntunedSimConfig config)
    : config_(config) {
  if (config_.dim < 32) {
    throw InvalidArgumentError("untuned_sim requires d >= 32");
  }
  projection_ = GaussianMatrix(config_.dim, kUntunedGrid * kUntunedGrid,
                               StreamSeed(config_.seed, 0x756e7475ULL));
}

EmbeddingVector UntunedSimProvider::EmbedImage(const LesionImage& image) const {
  const int h = image.pixels.height();
  const int w = image.pixels.width();
  if (h < kUntunedGrid || w < kUntunedGrid) {
    throw DataError("image " + image.image_id + " is smaller than 16x16");
  }
  constexpr int kCells = kUntunedGrid * kUntunedGrid;
  std::array<double, kCells> cells{};
  for (int gr = 0; gr < kUntunedGrid; ++gr) {
    for (int gc = 0; gc < kUntunedGrid; ++gc) {
      const int r0 = gr * h / kUntunedGrid;
      const int r1 = (gr + 1) * h / kUntunedGrid;
      const int c0 = gc * w / kUntunedGrid;
      const int c1 = (gc + 1) * w / kUntunedGrid;
      double sum = 0.0;
      for (int r = r0; r < r1; ++r) {
        for (int c = c0; c < c1; ++c) sum += Grayscale(image.pixels(r, c));
      }
      cells[gr * kUntunedGrid + gc] = sum / ((r1 - r0) * (c1 - c0)) / 255.0;
    }
  }
  std::vector<double> raw(config_.dim, 0.0);
  for (int r = 0; r < config_.dim; ++r) {
    double acc = 0.0;
    for (int k = 0; k < kCells; ++k) {
      acc += projection_[static_cast<std::size_t>(r) * kCells + k] * cells[k];
    }
    raw[r] = acc;
  }
  return Normalize(raw);
}

EmbeddingVector UntunedSimProvider::EmbedImageAttribute(const LesionImage& image,
                                                        AttributeId) const {
  return EmbedImage(image);
}

nlohmann::json ProviderToJson(const TunedSimProvider& provider) {
  const auto& c = provider.config();
  const auto& s = provider.stats();
  nlohmann::json j;
  j["kind"] = "tuned_sim";
  j["d"] = c.dim;
  j["noise_sd"] = c.noise_sd;
  j["attr_gain"] = c.attr_gain;
  j["seed"] = c.seed;
  j["stats"] = {
      {"attr_mean", s.attr_mean},
      {"attr_sd", s.attr_sd},
      {"visual_mean", s.visual_mean},
      {"visual_sd", s.visual_sd},
  };
  j["warnings"] = provider.warnings();
  return j;
}

nlohmann::json ProviderToJson(const UntunedSimProvider& provider) {
  nlohmann::json j;
  j["kind"] = "untuned_sim";
  j["d"] = provider.config().dim;
  j["seed"] = provider.config().seed;
  return j;
}

std::unique_ptr<EmbeddingProvider> ProviderFromJson(const nlohmann::json& j) {
  try {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "tuned_sim") {
      TunedSimConfig c;
      c.dim = j.at("d").get<int>();
      c.noise_sd = j.at("noise_sd").get<double>();
      c.attr_gain = j.at("attr_gain").get<double>();
      c.seed = j.at("seed").get<std::uint64_t>();
      CorpusStats s;
      const auto& js = j.at("stats");
      s.attr_mean = js.at("attr_mean").get<std::array<double, kAttributeCount>>();
      s.attr_sd = js.at("attr_sd").get<std::array<double, kAttributeCount>>();
      s.visual_mean = js.at("visual_mean").get<std::vector<double>>();
      s.visual_sd = js.at("visual_sd").get<std::vector<double>>();
      return std::make_unique<TunedSimProvider>(std::move(s), c);
    }
    if (kind == "untuned_sim") {
      UntunedSimConfig c;
      c.dim = j.at("d").get<int>();
      c.seed = j.at("seed").get<std::uint64_t>();
      return std::make_unique<UntunedSimProvider>(c);
    }
    throw DataError("unknown provider kind: " + kind);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("bad provider description: ") + e.what());
  }
}

}  // namespace lesionseek
