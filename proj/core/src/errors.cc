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

#include "lesionseek/errors.h"

namespace lesionseek {

FormatError::FormatError(Kind kind, const std::string& message)
    : DataError(message), kind_(kind) {}

std::string_view FormatErrorKindName(FormatError::Kind kind) {
  switch (kind) {
    case FormatError::Kind::kBadMagic:
      return "bad magic";
    case FormatError::Kind::kVersionMismatch:
      return "version mismatch";
    case FormatError::Kind::kTruncated:
      return "truncated payload";
    case FormatError::Kind::kDuplicateId:
      return "duplicate id";
    case FormatError::Kind::kBadTag:
      return "bad tag";
    case FormatError::Kind::kTrailingData:
      return "trailing data";
    case FormatError::Kind::kMalformed:
      return "malformed";
  }
  return "unknown";
}

}  // namespace lesionseek
