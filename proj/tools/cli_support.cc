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

#include "cli_support.h"

#include <cstdlib>
#include <fstream>

#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include "lesionseek/attribute_oracle.h"
#include "lesionseek/errors.h"
#include "lesionseek/parallel.h"

namespace lesionseek::cli {

void ConfigureLogging() {
  auto logger = spdlog::stderr_logger_mt("lesionseek");
  logger->set_pattern("[%l] %v");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  const char* env = std::getenv("LESIONSEEK_LOG");
  if (env == nullptr || *env == '\0') return;
  const std::string level(env);
  if (level == "error") {
    spdlog::set_level(spdlog::level::err);
  } else if (level == "warn") {
    spdlog::set_level(spdlog::level::warn);
  } else if (level == "info") {
    spdlog::set_level(spdlog::level::info);
  } else if (level == "debug") {
    spdlog::set_level(spdlog::level::debug);
  } else {
    spdlog::warn("ignoring LESIONSEEK_LOG={} (expected error, warn, info or debug)",
                 level);
  }
}

nlohmann::json ReadJsonFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

void WriteJsonFile(const std::filesystem::path& path, const nlohmann::json& j) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  out << j.dump(2) << '\n';
  if (!out) throw DataError("write failed: " + path.string());
}

void WriteRunConfig(const std::filesystem::path& out, bool out_is_dir,
                    nlohmann::json config) {
  config["version"] = "0.1.0";
  std::filesystem::path path = out;
  if (out_is_dir) {
    path /= "run_config.json";
  } else {
    path += ".run_config.json";
  }
  WriteJsonFile(path, config);
  spdlog::info("run config written to {}", path.string());
}

std::vector<std::string> ManifestIds(const Manifest& manifest) {
  std::vector<std::string> ids;
  ids.reserve(manifest.size());
  for (const ManifestEntry& e : manifest.entries) ids.push_back(e.image_id);
  return ids;
}

ImageLoader ManifestLoader(const Manifest& manifest) {
  return [&manifest](std::size_t i) { return LoadLesionImage(manifest, i); };
}

std::vector<AttributeVector> ResolveAttributes(
    const Manifest& manifest, const std::optional<std::filesystem::path>& dump,
    int threads) {
  std::unordered_map<std::string, AttributeVector> dumped;
  if (dump) dumped = ReadAttributeDump(*dump);
  std::vector<AttributeVector> out(manifest.size());
  ParallelFor(manifest.size(), threads, [&](std::size_t i) {
    const ManifestEntry& e = manifest.entries[i];
    if (dump) {
      const auto it = dumped.find(e.image_id);
      if (it == dumped.end()) {
        throw DataError("attribute dump has no entry for " + e.image_id);
      }
      out[i] = it->second;
    } else if (e.attributes) {
      out[i] = *e.attributes;
    } else {
      try {
        out[i] = ComputeAttributes(LoadLesionImage(manifest, i));
      } catch (const Error& ex) {
        throw DataError("image " + e.image_id + ": " + ex.what());
      }
    }
  });
  return out;
}

std::filesystem::path TunedDbPath(const std::filesystem::path& dir, DatabaseTag tag) {
  return dir / (tag.name() + ".aedb");
}

std::filesystem::path UntunedDbPath(const std::filesystem::path& dir) {
  return dir / "untuned_image.aedb";
}

std::unique_ptr<EmbeddingProvider> LoadProvider(const std::filesystem::path& dir,
                                                const char* file) {
  const std::filesystem::path path = dir / file;
  if (!std::filesystem::exists(path)) {
    throw DataError("database directory has no " + std::string(file) +
                    "; run build-db first");
  }
  try {
    return ProviderFromJson(ReadJsonFile(path));
  } catch (const nlohmann::json::exception& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

}  // namespace lesionseek::cli
