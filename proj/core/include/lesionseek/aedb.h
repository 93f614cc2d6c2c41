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

#ifndef LESIONSEEK_AEDB_H_
#define LESIONSEEK_AEDB_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lesionseek/embedding.h"

namespace lesionseek {

// AEDB embedding interchange format, little-endian, no padding:
//
//   "AEDB"            4 bytes magic
//   version           u32, currently 1
//   tag               u32, 0 = image-only, 1..16 = attribute_index + 1
//   d                 u32
//   count             u64
//   count x { id_len u16, id bytes (UTF-8), d x f32 }
inline constexpr char kAedbMagic[4] = {'A', 'E', 'D', 'B'};
inline constexpr std::uint32_t kAedbVersion = 1;

struct EmbeddingFile {
  DatabaseTag tag = DatabaseTag::ImageOnly();
  int dim = 0;
  std::vector<std::string> ids;
  // ids.size() x dim, row-major.
  std::vector<float> matrix;
};

// Throws InvalidArgumentError when ids and rows disagree, an id is empty
// or longer than 65535 bytes, or dim < 1.
std::string EncodeEmbeddings(DatabaseTag tag, int dim,
                             std::span<const std::string> ids,
                             std::span<const float> matrix);

// Throws FormatError with kind kBadMagic, kVersionMismatch, kBadTag,
// kTruncated, kDuplicateId, kTrailingData or kMalformed.
EmbeddingFile DecodeEmbeddings(std::string_view bytes);

void WriteEmbeddings(const std::filesystem::path& path, DatabaseTag tag, int dim,
                     std::span<const std::string> ids,
                     std::span<const float> matrix);
EmbeddingFile ReadEmbeddings(const std::filesystem::path& path);

// Reads just the fixed-size header (tag, d, count) without the payload.
struct EmbeddingHeader {
  DatabaseTag tag = DatabaseTag::ImageOnly();
  int dim = 0;
  std::uint64_t count = 0;
};
EmbeddingHeader ReadEmbeddingHeader(const std::filesystem::path& path);

}  // namespace lesionseek

#endif  // LESIONSEEK_AEDB_H_
