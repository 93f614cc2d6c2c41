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

#include <cmath>
#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "lesionseek/errors.h"
#include "test_util.h"

namespace lesionseek {
namespace {

using testing::RandomUnitRows;
using testing::SequentialIds;

// Exhaustive reference: score every row, full sort.
std::vector<std::pair<std::string, double>> NaiveTopK(const std::vector<std::string>& ids,
                                                      const std::vector<float>& m, int d,
                                                      const std::vector<float>& q,
                                                      std::size_t k) {
  double qn = 0;
  for (float v : q) qn += double(v) * v;
  qn = std::sqrt(qn);
  std::vector<std::pair<std::string, double>> all;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    double dot = 0;
    for (int j = 0; j < d; ++j) dot += double(m[i * d + j]) * (q[j] / qn);
    all.emplace_back(ids[i], dot);
  }
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  all.resize(k);
  return all;
}

TEST(TopK, AgreesWithNaiveOracleOnRandomDatabases) {
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 100; ++t) {
    const int d = 2 + static_cast<int>(rng() % 40);
    const std::size_t n = 1 + rng() % 300;
    auto ids = SequentialIds(n);
    std::shuffle(ids.begin(), ids.end(), rng);
    const auto m = RandomUnitRows(n, d, rng);
    const EmbeddingDatabase db(DatabaseTag::ImageOnly(), d, ids, m);
    std::vector<float> q = RandomUnitRows(1, d, rng);
    for (float& v : q) v *= 3.0f;  // queries need not be unit length
    const std::size_t k = 1 + rng() % n;
    const auto hits = TopK(db, q, k);
    const auto ref = NaiveTopK(ids, m, d, q, k);
    ASSERT_EQ(hits.size(), k);
    for (std::size_t i = 0; i < k; ++i) {
      EXPECT_EQ(hits[i].id, ref[i].first);
      EXPECT_NEAR(hits[i].similarity, ref[i].second, 1e-6);
      EXPECT_EQ(db.id(hits[i].row), hits[i].id);
    }
  }
}

TEST(TopK, TiesBreakByAscendingId) {
  const std::vector<std::string> ids = {"c", "a", "d", "b"};
  const std::vector<float> m = {1, 0, 1, 0, 0, 1, 1, 0};
  const EmbeddingDatabase db(DatabaseTag::ImageOnly(), 2, ids, m);
  const std::vector<float> q = {1, 0};
  const auto hits = TopK(db, q, 4);
  EXPECT_EQ(hits[0].id, "a");
  EXPECT_EQ(hits[1].id, "b");
  EXPECT_EQ(hits[2].id, "c");
  EXPECT_EQ(hits[3].id, "d");
  EXPECT_DOUBLE_EQ(hits[0].similarity, 1.0);
}

TEST(TopK, SelfExclusion) {
  std::mt19937_64 rng(3);
  const auto ids = SequentialIds(10);
  const auto m = RandomUnitRows(10, 8, rng);
  const EmbeddingDatabase db(DatabaseTag::ImageOnly(), 8, ids, m);
  const std::vector<float> q(m.begin() + 3 * 8, m.begin() + 4 * 8);
  EXPECT_EQ(TopK(db, q, 1)[0].id, ids[3]);
  EXPECT_NEAR(TopK(db, q, 1)[0].similarity, 1.0, 1e-6);
  const auto hits = TopK(db, q, 9, &ids[3]);
  for (const Hit& h : hits) EXPECT_NE(h.id, ids[3]);
  EXPECT_THROW(TopK(db, q, 10, &ids[3]), InvalidArgumentError);
  const std::string outsider = "zzz";
  EXPECT_EQ(TopK(db, q, 10, &outsider).size(), 10u);
}

TEST(TopK, ArgumentErrors) {
  std::mt19937_64 rng(4);
  const EmbeddingDatabase db(DatabaseTag::ImageOnly(), 4, SequentialIds(5),
                             RandomUnitRows(5, 4, rng));
  const std::vector<float> q = {1, 0, 0, 0};
  EXPECT_THROW(TopK(db, q, 0), InvalidArgumentError);
  EXPECT_THROW(TopK(db, q, 6), InvalidArgumentError);
  const std::vector<float> q3 = {1, 0, 0};
  EXPECT_THROW(TopK(db, q3, 1), InvalidArgumentError);
  const std::vector<float> zero = {0, 0, 0, 0};
  EXPECT_THROW(TopK(db, zero, 1), InvalidArgumentError);
}

TEST(EmbeddingDatabase, ConstructorValidation) {
  const std::vector<float> ok = {1, 0, 0, 1};
  EXPECT_NO_THROW(EmbeddingDatabase(DatabaseTag::ImageOnly(), 2, {"a", "b"}, ok));
  EXPECT_THROW(EmbeddingDatabase(DatabaseTag::ImageOnly(), 2, {"a", "a"}, ok),
               InvalidArgumentError);
  EXPECT_THROW(EmbeddingDatabase(DatabaseTag::ImageOnly(), 2, {"a"}, ok), InvalidArgumentError);
  EXPECT_THROW(EmbeddingDatabase(DatabaseTag::ImageOnly(), 1, {"a", "b", "c", "d"}, ok),
               InvalidArgumentError);
  const std::vector<float> long_row = {2, 0, 0, 1};
  EXPECT_THROW(EmbeddingDatabase(DatabaseTag::ImageOnly(), 2, {"a", "b"}, long_row),
               InvalidArgumentError);
  const EmbeddingDatabase db(DatabaseTag::ImageOnly(), 2, {"a", "b"}, ok);
  EXPECT_EQ(db.RowOf("b"), 1u);
  EXPECT_FALSE(db.RowOf("c").has_value());
}

TEST(BuildDatabase, RowsFollowInputOrderAndThreadCountDoesNotMatter) {
  const testing::MiniCorpus c(24);
  const TunedSimProvider p(c.Stats(), {64, 0.05, 4.0, 1});
  const std::vector<DatabaseTag> tags = {DatabaseTag::ImageOnly(),
                                         DatabaseTag::ForAttribute(AttributeId::kB)};
  const auto one = BuildDatabases(p, c.ids, c.Loader(), tags, 1);
  const auto four = BuildDatabases(p, c.ids, c.Loader(), tags, 4);
  for (std::size_t t = 0; t < tags.size(); ++t) {
    EXPECT_EQ(one[t].tag(), tags[t]);
    EXPECT_EQ(one[t].ids(), c.ids);
    EXPECT_EQ(one[t].matrix(), four[t].matrix());
  }
  const auto single = BuildDatabase(p, c.ids, c.Loader(), tags[1], 2);
  EXPECT_EQ(single.matrix(), one[1].matrix());
  const auto row = p.EmbedImageAttribute(c.corpus.Image(7), AttributeId::kB);
  EXPECT_TRUE(std::equal(row.begin(), row.end(), one[1].row(7).begin()));
}

TEST(BuildDatabase, FailuresNameTheImage) {
  const testing::MiniCorpus c(5);
  const TunedSimProvider p(c.Stats(), {64, 0.05, 4.0, 1});
  const ImageLoader broken = [&](std::size_t i) {
    LesionImage im = c.corpus.Image(i);
    if (i == 3) im.mask = BinaryMask(im.mask.height(), im.mask.width());
    return im;
  };
  try {
    BuildDatabase(p, c.ids, broken, DatabaseTag::ImageOnly());
    FAIL();
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find(c.ids[3]), std::string::npos) << e.what();
  }
  EXPECT_THROW(BuildDatabase(p, {}, broken, DatabaseTag::ImageOnly()), InvalidArgumentError);
}

}  // namespace
}  // namespace lesionseek
