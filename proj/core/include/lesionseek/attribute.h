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

#ifndef LESIONSEEK_ATTRIBUTE_H_
#define LESIONSEEK_ATTRIBUTE_H_

#include <array>
#include <cstddef>
#include <string_view>

namespace lesionseek {

// The sixteen quantitative lesion attributes. Enumerator order is the
// canonical ordering used by every file format and report; never reorder.
enum class AttributeId : int {
  kAreaMM2 = 0,
  kMinorAxisMM,
  kNormColor,
  kRadialColorStdMax,
  kDeltaB,
  kDeltaL,
  kDeltaLB,
  kStdLExt,
  kClinSizeLongDiamMM,
  kPerimeterMM,
  kNormBorder,
  kAreaPerimRatio,
  kA,
  kAext,
  kB,
  kBext,
};

inline constexpr std::size_t kAttributeCount = 16;

// Dataset names, e.g. "areaMM2", "clin_size_long_diam_mm".
std::string_view AttributeName(AttributeId id);

// Throws InvalidArgumentError naming `name` if it is not one of the 16.
AttributeId AttributeFromName(std::string_view name);

constexpr int AttributeIndex(AttributeId id) { return static_cast<int>(id); }

// Throws InvalidArgumentError for indices outside 0..15.
AttributeId AttributeFromIndex(int index);

// All attributes in canonical order.
const std::array<AttributeId, kAttributeCount>& AllAttributes();

// Numeric values of all 16 attributes for one image, indexed by AttributeId.
class AttributeVector {
 public:
  AttributeVector() { values_.fill(0.0); }
  explicit AttributeVector(const std::array<double, kAttributeCount>& values)
      : values_(values) {}

  double operator[](AttributeId id) const {
    return values_[static_cast<std::size_t>(id)];
  }
  double& operator[](AttributeId id) {
    return values_[static_cast<std::size_t>(id)];
  }

  const std::array<double, kAttributeCount>& values() const { return values_; }

  friend bool operator==(const AttributeVector&,
                         const AttributeVector&) = default;

 private:
  std::array<double, kAttributeCount> values_;
};

// Checks the cross-attribute invariants (positive area and perimeter,
// minor <= long diameter, ratio consistency, finiteness). Throws DataError
// describing the first violation.
void ValidateAttributeVector(const AttributeVector& v);

}  // namespace lesionseek

#endif  // LESIONSEEK_ATTRIBUTE_H_
