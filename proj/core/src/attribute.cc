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
#include <string>

#include "lesionseek/errors.h"

namespace lesionseek {
namespace {

constexpr std::array<std::string_view, kAttributeCount> kNames = {
    "areaMM2",
    "minorAxisMM",
    "norm_color",
    "radial_color_std_max",
    "deltaB",
    "deltaL",
    "deltaLB",
    "stdLExt",
    "clin_size_long_diam_mm",
    "perimeterMM",
    "norm_border",
    "area_perim_ratio",
    "A",
    "Aext",
    "B",
    "Bext",
};

}  // namespace

std::string_view AttributeName(AttributeId id) {
  return kNames.at(static_cast<std::size_t>(id));
}

AttributeId AttributeFromName(std::string_view name) {
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (kNames[i] == name) return static_cast<AttributeId>(i);
  }
  throw InvalidArgumentError("unknown attribute name: '" + std::string(name) +
                             "'");
}

AttributeId AttributeFromIndex(int index) {
  if (index < 0 || index >= static_cast<int>(kAttributeCount)) {
    throw InvalidArgumentError("attribute index out of range: " +
                               std::to_string(index));
  }
  return static_cast<AttributeId>(index);
}

const std::array<AttributeId, kAttributeCount>& AllAttributes() {
  static const std::array<AttributeId, kAttributeCount> all = [] {
    std::array<AttributeId, kAttributeCount> ids{};
    for (std::size_t i = 0; i < kAttributeCount; ++i) {
      ids[i] = static_cast<AttributeId>(i);
    }
    return ids;
  }();
  return all;
}

void ValidateAttributeVector(const AttributeVector& v) {
  for (AttributeId id : AllAttributes()) {
    if (!std::isfinite(v[id])) {
      throw DataError("attribute " + std::string(AttributeName(id)) +
                      " is not finite");
    }
  }
  if (!(v[AttributeId::kAreaMM2] > 0.0)) {
    throw DataError("areaMM2 must be positive");
  }
  if (!(v[AttributeId::kPerimeterMM] > 0.0)) {
    throw DataError("perimeterMM must be positive");
  }
  if (v[AttributeId::kMinorAxisMM] > v[AttributeId::kClinSizeLongDiamMM]) {
    throw DataError("minorAxisMM exceeds clin_size_long_diam_mm");
  }
  const double expected =
      v[AttributeId::kPerimeterMM] / v[AttributeId::kAreaMM2];
  const double ratio = v[AttributeId::kAreaPerimRatio];
  if (std::abs(ratio - expected) > 1e-9 * std::abs(expected)) {
    throw DataError("area_perim_ratio inconsistent with perimeterMM/areaMM2");
  }
}

}  // namespace lesionseek
