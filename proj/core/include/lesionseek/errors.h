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

#ifndef LESIONSEEK_ERRORS_H_
#define LESIONSEEK_ERRORS_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace lesionseek {

// Base of every error raised by the library. The CLI maps subclasses onto
// process exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller-supplied argument violates an operation's precondition.
class InvalidArgumentError : public Error {
 public:
  using Error::Error;
};

// Input data (images, manifests, attribute files) is malformed or violates
// a domain invariant.
class DataError : public Error {
 public:
  using Error::Error;
};

// Binary or structured file could not be decoded. Each failure mode carries
// its own kind so callers can tell them apart.
class FormatError : public DataError {
 public:
  enum class Kind {
    kBadMagic,
    kVersionMismatch,
    kTruncated,
    kDuplicateId,
    kBadTag,
    kTrailingData,
    kMalformed,
  };

  FormatError(Kind kind, const std::string& message);

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

std::string_view FormatErrorKindName(FormatError::Kind kind);

}  // namespace lesionseek

#endif  // LESIONSEEK_ERRORS_H_
