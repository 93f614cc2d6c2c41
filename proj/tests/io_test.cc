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

#include <fstream>
#include <set>

#include <gtest/gtest.h>

#include "lesionseek/attribute_oracle.h"
#include "lesionseek/errors.h"
#include "lesionseek/manifest.h"
#include "lesionseek/png_io.h"
#include "lesionseek/split.h"
#include "lesionseek/synth.h"
#include "test_util.h"

namespace lesionseek {
namespace {

using testing::ScratchDir;

TEST(PngIo, RgbAndMaskRoundTrip) {
  const auto dir = ScratchDir("png");
  LesionParams p;
  p.interior_noise_sd = 9;
  p.exterior_noise_sd = 4;
  p.jaggedness = 0.3;
  const LesionImage im = GenerateLesion(p, 17);
  WriteRgbPng(dir / "im.png", im.pixels);
  WriteMaskPng(dir / "mask.png", im.mask);
  EXPECT_EQ(ReadRgbPng(dir / "im.png"), im.pixels);
  EXPECT_EQ(ReadMaskPng(dir / "mask.png"), im.mask);
}

TEST(PngIo, MissingOrCorruptFilesRaiseDataError) {
  const auto dir = ScratchDir("png_bad");
  EXPECT_THROW(ReadRgbPng(dir / "nope.png"), DataError);
  std::ofstream(dir / "junk.png") << "not a png";
  EXPECT_THROW(ReadRgbPng(dir / "junk.png"), DataError);
  EXPECT_THROW(ReadMaskPng(dir / "junk.png"), DataError);
}

TEST(Synth, GenerationIsDeterministicAndContained) {
  const SyntheticCorpus a = DescribeCorpus(30, 6, ParamRanges{}, 99);
  const SyntheticCorpus b = DescribeCorpus(30, 6, ParamRanges{}, 99);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const LesionImage x = a.Image(i);
    const LesionImage y = b.Image(i);
    EXPECT_EQ(x.pixels, y.pixels);
    EXPECT_EQ(x.mask, y.mask);
    EXPECT_EQ(a.entries[i].patient_id, "pat_000" + std::to_string(i % 6));
    EXPECT_NO_THROW(ValidateAttributeVector(ComputeAttributes(x)));
  }
  const SyntheticCorpus c = DescribeCorpus(30, 6, ParamRanges{}, 100);
  EXPECT_NE(c.Image(0).pixels, a.Image(0).pixels);
}

TEST(Synth, ParameterValidation) {
  LesionParams p;
  p.radius_px = 70;
  EXPECT_THROW(GenerateLesion(p, 1), InvalidArgumentError);
  p = LesionParams{};
  p.jaggedness = 1.5;
  EXPECT_THROW(GenerateLesion(p, 1), InvalidArgumentError);
  EXPECT_THROW(DescribeCorpus(0, 1, ParamRanges{}, 1), InvalidArgumentError);
  EXPECT_THROW(DescribeCorpus(5, 6, ParamRanges{}, 1), InvalidArgumentError);
}

TEST(Split, PatientsNeverStraddleAndFractionIsApproximate) {
  const SyntheticCorpus c = DescribeCorpus(500, 47, ParamRanges{}, 3);
  const DatasetSplit s = MakeSplit(c.entries, 0.8, 11);
  EXPECT_NO_THROW(ValidateSplit(s, c.entries));
  EXPECT_EQ(s.train_ids.size() + s.test_ids.size(), 500u);
  EXPECT_NEAR(s.achieved_train_fraction, 0.8, 0.03);
  std::set<std::string> train_patients;
  for (const auto& e : SelectEntries(c.entries, s.train_ids)) train_patients.insert(e.patient_id);
  for (const auto& e : SelectEntries(c.entries, s.test_ids)) {
    EXPECT_FALSE(train_patients.contains(e.patient_id));
  }
  const DatasetSplit again = MakeSplit(c.entries, 0.8, 11);
  EXPECT_EQ(again.train_ids, s.train_ids);
  EXPECT_THROW(MakeSplit(c.entries, 1.0, 1), InvalidArgumentError);
}

TEST(Split, RoundTripAndValidation) {
  const auto dir = ScratchDir("split");
  const SyntheticCorpus c = DescribeCorpus(40, 8, ParamRanges{}, 3);
  DatasetSplit s = MakeSplit(c.entries, 0.5, 2);
  WriteSplit(dir / "split.json", s);
  const DatasetSplit r = ReadSplit(dir / "split.json");
  EXPECT_EQ(r.train_ids, s.train_ids);
  EXPECT_EQ(r.test_ids, s.test_ids);
  // Moving one image of a training patient into test breaks stratification.
  s.test_ids.push_back(s.train_ids.back());
  s.train_ids.pop_back();
  EXPECT_THROW(ValidateSplit(s, c.entries), DataError);
}

TEST(Manifest, CorpusRoundTripThroughDisk) {
  const auto dir = ScratchDir("manifest");
  const SyntheticCorpus c = DescribeCorpus(12, 3, ParamRanges{}, 8);
  WriteCorpus(c, dir, 2);
  const Manifest m = ReadManifest(dir / "manifest.jsonl");
  ASSERT_EQ(m.size(), 12u);
  for (std::size_t i = 0; i < m.size(); ++i) {
    EXPECT_EQ(m.entries[i].image_id, c.entries[i].image_id);
    EXPECT_EQ(m.entries[i].scale_mm_per_px, c.entries[i].scale_mm_per_px);
    const LesionImage loaded = LoadLesionImage(m, i);
    const LesionImage direct = c.Image(i);
    EXPECT_EQ(loaded.pixels, direct.pixels);
    EXPECT_EQ(loaded.mask, direct.mask);
    EXPECT_EQ(ComputeAttributes(loaded), ComputeAttributes(direct));
  }
}

TEST(Manifest, AttributesAndDumpRoundTrip) {
  const auto dir = ScratchDir("dump");
  const SyntheticCorpus c = DescribeCorpus(6, 2, ParamRanges{}, 8);
  std::vector<std::string> ids;
  std::vector<AttributeVector> values;
  std::vector<ManifestEntry> entries = c.entries;
  for (std::size_t i = 0; i < c.size(); ++i) {
    ids.push_back(c.entries[i].image_id);
    values.push_back(ComputeAttributes(c.Image(i)));
    entries[i].attributes = values.back();
  }
  WriteAttributeDump(dir / "attrs.jsonl", ids, values);
  const auto dumped = ReadAttributeDump(dir / "attrs.jsonl");
  for (std::size_t i = 0; i < ids.size(); ++i) EXPECT_EQ(dumped.at(ids[i]), values[i]);
  WriteManifest(dir / "m.jsonl", entries);
  const Manifest m = ReadManifest(dir / "m.jsonl");
  for (std::size_t i = 0; i < ids.size(); ++i) EXPECT_EQ(*m.entries[i].attributes, values[i]);
}

TEST(Manifest, MalformedInputNamesTheLine) {
  const auto dir = ScratchDir("manifest_bad");
  {
    std::ofstream out(dir / "m.jsonl");
    out << R"({"image_id":"a","patient_id":"p","image_path":"x","mask_path":"y","scale_mm_per_px":0.1})"
        << "\n{not json\n";
  }
  try {
    ReadManifest(dir / "m.jsonl");
    FAIL();
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find(":2"), std::string::npos) << e.what();
  }
  {
    std::ofstream out(dir / "dup.jsonl");
    const char* line =
        R"({"image_id":"a","patient_id":"p","image_path":"x","mask_path":"y","scale_mm_per_px":0.1})";
    out << line << "\n" << line << "\n";
  }
  EXPECT_THROW(ReadManifest(dir / "dup.jsonl"), DataError);
  const nlohmann::json partial = {{"areaMM2", 1.0}};
  EXPECT_THROW(AttributesFromJson(partial), DataError);
  const auto p = PartialAttributesFromJson(partial);
  EXPECT_EQ(p[0], 1.0);
  EXPECT_FALSE(p[1].has_value());
}

}  // namespace
}  // namespace lesionseek
