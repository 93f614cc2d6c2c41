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

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>
#include <unordered_set>

#include "lesionseek/errors.h"

namespace lesionseek {
namespace {

constexpr std::size_t kHeaderSize = 4 + 4 + 4 + 4 + 8;

template <typename T>
void PutLe(std::string& out, T value) {
  using U = std::make_unsigned_t<T>;
  U u = static_cast<U>(value);
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    out.push_back(static_cast<char>(u & 0xff));
    u = static_cast<U>(u >> 8);
  }
}

class Reader {
 public:
  explicit Reader(std::string_view bytes) : bytes_(bytes) {}

  template <typename T>
  T GetLe(const char* what) {
    Need(sizeof(T), what);
    std::make_unsigned_t<T> u = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) {
      u |= static_cast<std::make_unsigned_t<T>>(
               static_cast<unsigned char>(bytes_[pos_ + i]))
           << (8 * i);
    }
    pos_ += sizeof(T);
    return static_cast<T>(u);
  }

  std::string_view Take(std::size_t n, const char* what) {
    Need(n, what);
    std::string_view s = bytes_.substr(pos_, n);
    pos_ += n;
    return s;
  }

  std::size_t remaining() const { return bytes_.size() - pos_; }

 private:
  void Need(std::size_t n, const char* what) {
    if (bytes_.size() - pos_ < n) {
      throw FormatError(FormatError::Kind::kTruncated,
                        std::string("truncated payload while reading ") + what);
    }
  }

  std::string_view bytes_;
  std::size_t pos_ = 0;
};

EmbeddingHeader DecodeHeader(Reader& in) {
  const std::string_view magic = in.Take(4, "magic");
  if (std::memcmp(magic.data(), kAedbMagic, 4) != 0) {
    throw FormatError(FormatError::Kind::kBadMagic, "bad magic");
  }
  const auto version = in.GetLe<std::uint32_t>("version");
  if (version != kAedbVersion) {
    throw FormatError(FormatError::Kind::kVersionMismatch,
                      "version mismatch: file has " + std::to_string(version) +
                          ", expected " + std::to_string(kAedbVersion));
  }
  EmbeddingHeader h;
  h.tag = DatabaseTag::FromCode(in.GetLe<std::uint32_t>("tag"));
  const auto dim = in.GetLe<std::uint32_t>("dimension");
  if (dim == 0 || dim > static_cast<std::uint32_t>(std::numeric_limits<int>::max())) {
    throw FormatError(FormatError::Kind::kMalformed,
                      "invalid dimension " + std::to_string(dim));
  }
  h.dim = static_cast<int>(dim);
  h.count = in.GetLe<std::uint64_t>("count");
  return h;
}

}  // namespace

std::string EncodeEmbeddings(DatabaseTag tag, int dim,
                             std::span<const std::string> ids,
                             std::span<const float> matrix) {
  static_assert(sizeof(float) == 4 && std::numeric_limits<float>::is_iec559);
  if (dim < 1) throw InvalidArgumentError("dimension must be positive");
  if (matrix.size() != ids.size() * static_cast<std::size_t>(dim)) {
    throw InvalidArgumentError("ids and matrix rows differ in count");
  }
  std::string out;
  out.reserve(kHeaderSize + ids.size() * (2 + 16 + 4 * dim));
  out.append(kAedbMagic, 4);
  PutLe<std::uint32_t>(out, kAedbVersion);
  PutLe<std::uint32_t>(out, tag.code());
  PutLe<std::uint32_t>(out, static_cast<std::uint32_t>(dim));
  PutLe<std::uint64_t>(out, ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const std::string& id = ids[i];
    if (id.empty() || id.size() > std::numeric_limits<std::uint16_t>::max()) {
      throw InvalidArgumentError("id length must lie in [1, 65535] bytes");
    }
    PutLe<std::uint16_t>(out, static_cast<std::uint16_t>(id.size()));
    out.append(id);
    for (int k = 0; k < dim; ++k) {
      PutLe<std::uint32_t>(out, std::bit_cast<std::uint32_t>(
                                    matrix[i * static_cast<std::size_t>(dim) + k]));
    }
  }
  return out;
}

EmbeddingFile DecodeEmbeddings(std::string_view bytes) {
  Reader in(bytes);
  const EmbeddingHeader h = DecodeHeader(in);
  EmbeddingFile f;
  f.tag = h.tag;
  f.dim = h.dim;
  // Each row needs at least 2 + 1 + 4*d bytes; reject impossible counts
  // before reserving memory for them.
  const std::uint64_t min_row = 3 + 4ULL * static_cast<std::uint64_t>(h.dim);
  if (h.count > in.remaining() / min_row) {
    throw FormatError(FormatError::Kind::kTruncated,
                      "truncated payload: count " + std::to_string(h.count) +
                          " exceeds the bytes present");
  }
  f.ids.reserve(h.count);
  f.matrix.reserve(h.count * static_cast<std::size_t>(h.dim));
  std::unordered_set<std::string_view> seen;
  for (std::uint64_t i = 0; i < h.count; ++i) {
    const auto len = in.GetLe<std::uint16_t>("id length");
    if (len == 0) {
      throw FormatError(FormatError::Kind::kMalformed, "empty id at row " +
                                                           std::to_string(i));
    }
    const std::string_view id = in.Take(len, "id");
    if (!seen.insert(id).second) {
      throw FormatError(FormatError::Kind::kDuplicateId,
                        "duplicate id: " + std::string(id));
    }
    f.ids.emplace_back(id);
    for (int k = 0; k < h.dim; ++k) {
      f.matrix.push_back(std::bit_cast<float>(in.GetLe<std::uint32_t>("vector")));
    }
  }
  if (in.remaining() != 0) {
    throw FormatError(FormatError::Kind::kTrailingData,
                      std::to_string(in.remaining()) +
                          " trailing bytes after the last row");
  }
  return f;
}

void WriteEmbeddings(const std::filesystem::path& path, DatabaseTag tag, int dim,
                     std::span<const std::string> ids,
                     std::span<const float> matrix) {
  const std::string bytes = EncodeEmbeddings(tag, dim, ids, matrix);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw DataError("write failed: " + path.string());
}

namespace {

std::string Slurp(const std::filesystem::path& path, std::size_t limit) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::string bytes;
  if (limit == std::numeric_limits<std::size_t>::max()) {
    bytes.assign(std::istreambuf_iterator<char>(in), {});
  } else {
    bytes.resize(limit);
    in.read(bytes.data(), static_cast<std::streamsize>(limit));
    bytes.resize(static_cast<std::size_t>(in.gcount()));
  }
  return bytes;
}

}  // namespace

EmbeddingFile ReadEmbeddings(const std::filesystem::path& path) {
  return DecodeEmbeddings(Slurp(path, std::numeric_limits<std::size_t>::max()));
}

EmbeddingHeader ReadEmbeddingHeader(const std::filesystem::path& path) {
  const std::string bytes = Slurp(path, kHeaderSize);
  Reader in(bytes);
  return DecodeHeader(in);
}

}  // namespace lesionseek
