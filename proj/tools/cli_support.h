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

#ifndef LESIONSEEK_TOOLS_CLI_SUPPORT_H_
#define LESIONSEEK_TOOLS_CLI_SUPPORT_H_

#include <array>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lesionseek/embedding.h"
#include "lesionseek/manifest.h"
#include "lesionseek/vector_store.h"

namespace lesionseek::cli {

// Applies LESIONSEEK_LOG (error, warn, info, debug) to a stderr logger.
void ConfigureLogging();

// Writes `config` as pretty JSON next to the run's outputs: inside `out`
// when it is a directory, otherwise at `<out>.run_config.json`.
void WriteRunConfig(const std::filesystem::path& out, bool out_is_dir,
                    nlohmann::json config);

// Ground-truth attributes for every manifest entry, preferring an
// attribute dump, then attributes stored in the manifest, then the pixel
// oracle.
std::vector<AttributeVector> ResolveAttributes(
    const Manifest& manifest, const std::optional<std::filesystem::path>& dump,
    int threads);

std::vector<std::string> ManifestIds(const Manifest& manifest);
ImageLoader ManifestLoader(const Manifest& manifest);

// File names inside a database directory.
std::filesystem::path TunedDbPath(const std::filesystem::path& dir, DatabaseTag tag);
std::filesystem::path UntunedDbPath(const std::filesystem::path& dir);
inline constexpr const char* kTunedProviderFile = "provider_tuned.json";
inline constexpr const char* kUntunedProviderFile = "provider_untuned.json";
inline constexpr const char* kSourceFile = "source.json";

nlohmann::json ReadJsonFile(const std::filesystem::path& path);
void WriteJsonFile(const std::filesystem::path& path, const nlohmann::json& j);

// Provider recorded in a database directory; throws DataError if absent.
std::unique_ptr<EmbeddingProvider> LoadProvider(const std::filesystem::path& dir,
                                                const char* file);

}  // namespace lesionseek::cli

#endif  // LESIONSEEK_TOOLS_CLI_SUPPORT_H_
