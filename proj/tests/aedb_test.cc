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

#include "lesionseek/aedb.h"

#include <cstring>
#include <fstream>
#include <random>

#include <gtest/gtest.h>

#include "lesionseek/errors.h"
#include "lesionseek/vector_store.h"
#include "test_util.h"

namespace lesionseek {
namespace {

using testing::RandomUnitRows;
using testing::ScratchDir;
using testing::SequentialIds;

FormatError::Kind DecodeFailure(const std::string& bytes) {
  try {
    DecodeEmbeddings(bytes);
  } catch (const FormatError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "decode unexpectedly succeeded";
  return FormatError::Kind::kMalformed;
}

std::string Sample(DatabaseTag tag = DatabaseTag::ForAttribute(AttributeId::kDeltaL)) {
  std::mt19937_64 rng(1);
  return EncodeEmbeddings(tag, 4, SequentialIds(3), RandomUnitRows(3, 4, rng));
}

TEST(Aedb, LayoutIsLittleEndianAndPacked) {
  const std::vector<std::string> ids = {"ab"};
  const std::vector<float> row = {1.0f, 0.0f};
  const std::string b = EncodeEmbeddings(DatabaseTag::ForAttribute(AttributeId::kAreaMM2), 2,
                                         ids, row);
  ASSERT_EQ(b.size(), 4u + 4 + 4 + 4 + 8 + 2 + 2 + 8);
  EXPECT_EQ(b.substr(0, 4), "AEDB");
  const unsigned char expected_head[] = {1, 0, 0, 0,  // version
                                         1, 0, 0, 0,  // tag: areaMM2 -> 1
                                         2, 0, 0, 0,  // d
                                         1, 0, 0, 0, 0, 0, 0, 0,  // count
                                         2, 0, 'a', 'b',
                                         0x00, 0x00, 0x80, 0x3f,  // 1.0f
                                         0, 0, 0, 0};
  EXPECT_EQ(std::memcmp(b.data() + 4, expected_head, sizeof(expected_head)), 0);
}

TEST(Aedb, FileRoundTripIsBitwise) {
  const auto dir = ScratchDir("aedb");
  std::mt19937_64 rng(5);
  for (int t = 0; t < 17; ++t) {
    const DatabaseTag tag = t == 0 ? DatabaseTag::ImageOnly()
                                   : DatabaseTag::ForAttribute(AttributeFromIndex(t - 1));
    const auto ids = SequentialIds(25, "img_");
    const auto m = RandomUnitRows(25, 7, rng);
    WriteEmbeddings(dir / "x.aedb", tag, 7, ids, m);
    const EmbeddingFile f = ReadEmbeddings(dir / "x.aedb");
    EXPECT_EQ(f.tag, tag);
    EXPECT_EQ(f.dim, 7);
    EXPECT_EQ(f.ids, ids);
    ASSERT_EQ(f.matrix.size(), m.size());
    EXPECT_EQ(std::memcmp(f.matrix.data(), m.data(), m.size() * sizeof(float)), 0);
    const EmbeddingHeader h = ReadEmbeddingHeader(dir / "x.aedb");
    EXPECT_EQ(h.tag, tag);
    EXPECT_EQ(h.dim, 7);
    EXPECT_EQ(h.count, 25u);
  }
}

TEST(Aedb, SpecialFloatBitPatternsSurvive) {
  const std::vector<float> vals = {-0.0f, std::numeric_limits<float>::denorm_min(),
                                   std::numeric_limits<float>::quiet_NaN(), 1e-38f};
  const EmbeddingFile f =
      DecodeEmbeddings(EncodeEmbeddings(DatabaseTag::ImageOnly(), 4, std::vector<std::string>{"x"}, vals));
  EXPECT_EQ(std::memcmp(f.matrix.data(), vals.data(), sizeof(float) * 4), 0);
}

TEST(Aedb, DatabaseSaveLoadIsBitwise) {
  const auto dir = ScratchDir("aedb_db");
  std::mt19937_64 rng(6);
  const EmbeddingDatabase db(DatabaseTag::ForAttribute(AttributeId::kBext), 16,
                             SequentialIds(40), RandomUnitRows(40, 16, rng));
  SaveDatabase(db, dir / "db.aedb");
  const EmbeddingDatabase back = LoadDatabase(dir / "db.aedb");
  EXPECT_EQ(back.tag(), db.tag());
  EXPECT_EQ(back.ids(), db.ids());
  EXPECT_EQ(std::memcmp(back.matrix().data(), db.matrix().data(),
                        db.matrix().size() * sizeof(float)),
            0);
}

TEST(Aedb, CorruptedMagic) {
  std::string b = Sample();
  b[0] = 'X';
  EXPECT_EQ(DecodeFailure(b), FormatError::Kind::kBadMagic);
  EXPECT_EQ(DecodeFailure("AE"), FormatError::Kind::kTruncated);
}

TEST(Aedb, VersionMismatch) {
  std::string b = Sample();
  b[4] = 2;
  EXPECT_EQ(DecodeFailure(b), FormatError::Kind::kVersionMismatch);
}

TEST(Aedb, Truncation) {
  const std::string b = Sample();
  for (std::size_t cut : {std::size_t{10}, std::size_t{24}, std::size_t{26}, b.size() - 1}) {
    EXPECT_EQ(DecodeFailure(b.substr(0, cut)), FormatError::Kind::kTruncated) << cut;
  }
  // A count far beyond the payload is rejected before allocation.
  std::string huge = b;
  huge[23] = 0x7f;
  EXPECT_EQ(DecodeFailure(huge), FormatError::Kind::kTruncated);
}

TEST(Aedb, TrailingBytesDuplicateIdsAndBadTags) {
  EXPECT_EQ(DecodeFailure(Sample() + "z"), FormatError::Kind::kTrailingData);
  std::string b = Sample();
  b[8] = 17;
  EXPECT_EQ(DecodeFailure(b), FormatError::Kind::kBadTag);
  std::mt19937_64 rng(1);
  const std::vector<std::string> dup = {"a", "a"};
  EXPECT_EQ(DecodeFailure(EncodeEmbeddings(DatabaseTag::ImageOnly(), 2, dup,
                                           RandomUnitRows(2, 2, rng))),
            FormatError::Kind::kDuplicateId);
  std::string zero_dim = Sample();
  zero_dim[12] = 0;
  EXPECT_EQ(DecodeFailure(zero_dim), FormatError::Kind::kMalformed);
}

TEST(Aedb, FormatErrorsAreDataErrors) {
  const auto dir = ScratchDir("aedb_bad");
  std::ofstream(dir / "bad.aedb", std::ios::binary) << "XXXX";
  EXPECT_THROW(ReadEmbeddings(dir / "bad.aedb"), DataError);
  EXPECT_THROW(ReadEmbeddings(dir / "missing.aedb"), DataError);
}

TEST(Aedb, EncoderRejectsInconsistentInput) {
  const std::vector<float> row = {1.0f, 0.0f};
  EXPECT_THROW(EncodeEmbeddings(DatabaseTag::ImageOnly(), 3, std::vector<std::string>{"a"}, row),
               InvalidArgumentError);
  EXPECT_THROW(EncodeEmbeddings(DatabaseTag::ImageOnly(), 2, std::vector<std::string>{""}, row),
               InvalidArgumentError);
}

}  // namespace
}  // namespace lesionseek
