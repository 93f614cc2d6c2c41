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

#ifndef LESIONSEEK_RNG_H_
#define LESIONSEEK_RNG_H_

#include <cstdint>
#include <string_view>

namespace lesionseek {

// SplitMix64 finalizer.
constexpr std::uint64_t Mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seed of the independent RNG stream for item `index` under `seed`. Work
// items draw from their own stream so results never depend on scheduling.
constexpr std::uint64_t StreamSeed(std::uint64_t seed, std::uint64_t index) {
  return Mix64(seed ^ Mix64(index ^ 0x5851f42d4c957f2dULL));
}

// 64-bit FNV-1a; stable across platforms and builds.
constexpr std::uint64_t Fnv1a64(std::string_view bytes,
                                std::uint64_t h = 0xcbf29ce484222325ULL) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace lesionseek

#endif  // LESIONSEEK_RNG_H_
