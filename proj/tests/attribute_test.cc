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

#include "lesionseek/attribute.h"

#include <cmath>
#include <set>

#include <gtest/gtest.h>

#include "lesionseek/errors.h"

namespace lesionseek {
namespace {

TEST(Attribute, SixteenNamesInTableOrder) {
  const char* expected[] = {"areaMM2", "minorAxisMM", "norm_color", "radial_color_std_max",
                            "deltaB", "deltaL", "deltaLB", "stdLExt",
                            "clin_size_long_diam_mm", "perimeterMM", "norm_border",
                            "area_perim_ratio", "A", "Aext", "B", "Bext"};
  ASSERT_EQ(AllAttributes().size(), 16u);
  for (int i = 0; i < 16; ++i) {
    const AttributeId a = AllAttributes()[i];
    EXPECT_EQ(AttributeIndex(a), i);
    EXPECT_EQ(AttributeName(a), expected[i]);
    EXPECT_EQ(AttributeFromName(expected[i]), a);
    EXPECT_EQ(AttributeFromIndex(i), a);
  }
}

TEST(Attribute, UnknownNamesAndIndicesAreRejected) {
  try {
    AttributeFromName("areamm2");
    FAIL();
  } catch (const InvalidArgumentError& e) {
    EXPECT_NE(std::string(e.what()).find("areamm2"), std::string::npos);
  }
  EXPECT_THROW(AttributeFromIndex(16), InvalidArgumentError);
  EXPECT_THROW(AttributeFromIndex(-1), InvalidArgumentError);
}

AttributeVector Plausible() {
  AttributeVector v;
  v[AttributeId::kAreaMM2] = 10;
  v[AttributeId::kPerimeterMM] = 12;
  v[AttributeId::kMinorAxisMM] = 3;
  v[AttributeId::kClinSizeLongDiamMM] = 4;
  v[AttributeId::kAreaPerimRatio] = 1.2;
  return v;
}

TEST(AttributeVector, Validation) {
  EXPECT_NO_THROW(ValidateAttributeVector(Plausible()));
  AttributeVector v = Plausible();
  v[AttributeId::kA] = std::nan("");
  EXPECT_THROW(ValidateAttributeVector(v), DataError);
  v = Plausible();
  v[AttributeId::kMinorAxisMM] = 5;
  EXPECT_THROW(ValidateAttributeVector(v), DataError);
  v = Plausible();
  v[AttributeId::kAreaPerimRatio] = 1.3;
  EXPECT_THROW(ValidateAttributeVector(v), DataError);
  v = Plausible();
  v[AttributeId::kAreaMM2] = 0;
  EXPECT_THROW(ValidateAttributeVector(v), DataError);
}

}  // namespace
}  // namespace lesionseek
