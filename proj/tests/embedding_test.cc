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

#include <gtest/gtest.h>

#include "lesionseek/errors.h"
#include "test_util.h"

namespace lesionseek {
namespace {

using testing::MiniCorpus;

double Norm(const EmbeddingVector& v) {
  double s = 0;
  for (float x : v) s += double(x) * x;
  return std::sqrt(s);
}

TEST(DatabaseTag, CodesAndNames) {
  EXPECT_EQ(DatabaseTag::ImageOnly().code(), 0u);
  EXPECT_EQ(DatabaseTag::ImageOnly().name(), "image");
  for (AttributeId a : AllAttributes()) {
    const DatabaseTag t = DatabaseTag::ForAttribute(a);
    EXPECT_EQ(t.code(), static_cast<std::uint32_t>(AttributeIndex(a)) + 1);
    EXPECT_EQ(DatabaseTag::FromCode(t.code()), t);
    EXPECT_EQ(DatabaseTag::FromName(t.name()), t);
  }
  EXPECT_THROW(DatabaseTag::FromCode(17), FormatError);
  EXPECT_THROW(DatabaseTag::FromName("size"), InvalidArgumentError);
}

TEST(Normalize, UnitLengthAndZeroRejected) {
  const std::vector<double> v = {3, 4};
  const EmbeddingVector u = Normalize(v);
  EXPECT_FLOAT_EQ(u[0], 0.6f);
  EXPECT_FLOAT_EQ(u[1], 0.8f);
  const std::vector<double> z = {0, 0};
  EXPECT_THROW(Normalize(z), DataError);
}

class ProviderTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() { corpus_ = new MiniCorpus(40); }
  static void TearDownTestSuite() { delete corpus_; }
  static MiniCorpus* corpus_;
};
MiniCorpus* ProviderTest::corpus_ = nullptr;

TEST_F(ProviderTest, TunedVectorsAreUnitNormAndDeterministic) {
  const TunedSimProvider p(corpus_->Stats(), {64, 0.05, 4.0, 7});
  const TunedSimProvider q(corpus_->Stats(), {64, 0.05, 4.0, 7});
  for (std::size_t i = 0; i < 5; ++i) {
    const LesionImage im = corpus_->corpus.Image(i);
    const auto all = p.EmbedAll(im);
    ASSERT_EQ(all.size(), 17u);
    EXPECT_EQ(all[0], p.EmbedImage(im));
    for (AttributeId a : AllAttributes()) {
      EXPECT_EQ(all[1 + AttributeIndex(a)], p.EmbedImageAttribute(im, a));
      EXPECT_EQ(p.Embed(im, DatabaseTag::ForAttribute(a)), all[1 + AttributeIndex(a)]);
    }
    for (const auto& v : all) {
      EXPECT_EQ(v.size(), 64u);
      EXPECT_NEAR(Norm(v), 1.0, 1e-6);
    }
    EXPECT_EQ(q.EmbedAll(im), all);
  }
}

TEST_F(ProviderTest, IdenticalContentEmbedsIdentically) {
  const TunedSimProvider p(corpus_->Stats(), {64, 0.05, 4.0, 7});
  LesionImage a = corpus_->corpus.Image(3);
  LesionImage b = a;
  b.image_id = "other";
  EXPECT_EQ(p.EmbedAll(a), p.EmbedAll(b));
}

TEST_F(ProviderTest, UnitGainMakesAttributeVariantsEqualImageVector) {
  const TunedSimProvider p(corpus_->Stats(), {64, 0.05, 1.0, 7});
  const LesionImage im = corpus_->corpus.Image(0);
  const auto all = p.EmbedAll(im);
  for (std::size_t k = 1; k < all.size(); ++k) EXPECT_EQ(all[k], all[0]);
}

TEST_F(ProviderTest, GainEmphasisesTheChosenAttribute) {
  const TunedSimProvider p(corpus_->Stats(), {64, 0.0, 4.0, 7});
  const LesionImage im = corpus_->corpus.Image(1);
  const auto base = p.EmbedImage(im);
  for (AttributeId a : AllAttributes()) {
    const auto v = p.EmbedImageAttribute(im, a);
    const std::size_t k = static_cast<std::size_t>(AttributeIndex(a));
    if (base[k] != 0.0f) EXPECT_GT(std::abs(v[k]), std::abs(base[k]));
  }
}

TEST_F(ProviderTest, ConfigValidation) {
  EXPECT_THROW(TunedSimProvider(corpus_->Stats(), {16, 0.05, 4.0, 0}), InvalidArgumentError);
  EXPECT_THROW(TunedSimProvider(corpus_->Stats(), {64, -1.0, 4.0, 0}), InvalidArgumentError);
  EXPECT_THROW(TunedSimProvider(corpus_->Stats(), {64, 0.05, 0.0, 0}), InvalidArgumentError);
  EXPECT_THROW(UntunedSimProvider({8, 0}), InvalidArgumentError);
}

TEST_F(ProviderTest, UntunedIgnoresAttribute) {
  const UntunedSimProvider p({64, 2});
  const LesionImage im = corpus_->corpus.Image(2);
  const auto v = p.EmbedImage(im);
  EXPECT_NEAR(Norm(v), 1.0, 1e-6);
  EXPECT_EQ(p.EmbedImageAttribute(im, AttributeId::kDeltaB), v);
}

TEST_F(ProviderTest, JsonRoundTripReproducesEmbeddings) {
  const TunedSimProvider tuned(corpus_->Stats(), {48, 0.1, 3.0, 9});
  const UntunedSimProvider untuned({40, 9});
  const auto t2 = ProviderFromJson(nlohmann::json::parse(ProviderToJson(tuned).dump()));
  const auto u2 = ProviderFromJson(nlohmann::json::parse(ProviderToJson(untuned).dump()));
  const LesionImage im = corpus_->corpus.Image(4);
  EXPECT_EQ(t2->EmbedAll(im), tuned.EmbedAll(im));
  EXPECT_EQ(u2->EmbedImage(im), untuned.EmbedImage(im));
  EXPECT_THROW(ProviderFromJson({{"kind", "clip"}}), DataError);
}

TEST_F(ProviderTest, ConstantFeatureIsZeroedWithWarning) {
  CorpusStats s = corpus_->Stats();
  s.attr_sd[AttributeIndex(AttributeId::kStdLExt)] = 0.0;
  const TunedSimProvider p(s, {64, 0.0, 4.0, 1});
  ASSERT_FALSE(p.warnings().empty());
  const auto v = p.EmbedImage(corpus_->corpus.Image(0));
  EXPECT_EQ(v[AttributeIndex(AttributeId::kStdLExt)], 0.0f);
}

TEST(PatchGrid, UniformImageHasZeroDeviation) {
  const BinaryMask m = testing::DiskMask(32, 16, 16, 5);
  const LesionImage im = testing::PaintedLesion(m, {50, 50, 50}, {50, 50, 50}, 0.1);
  const auto f = PatchGridFeatures(im);
  ASSERT_EQ(f.size(), static_cast<std::size_t>(kVisualFeatureCount));
  for (int i = 0; i < 16; ++i) EXPECT_NEAR(f[i], 50.0, 1e-9);
  for (int i = 16; i < 32; ++i) EXPECT_EQ(f[i], 0.0);
}

}  // namespace
}  // namespace lesionseek
