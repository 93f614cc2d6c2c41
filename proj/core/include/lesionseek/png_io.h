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

#ifndef LESIONSEEK_PNG_IO_H_
#define LESIONSEEK_PNG_IO_H_

#include <filesystem>

#include "lesionseek/lesion_image.h"

namespace lesionseek {

// 8-bit RGB PNG. Reading accepts any colour type libpng can expand to RGB;
// alpha is dropped. Throws DataError on I/O or decode failure.
RgbImage ReadRgbPng(const std::filesystem::path& path);
void WriteRgbPng(const std::filesystem::path& path, const RgbImage& image);

// Masks are 8-bit grayscale PNGs, 255 for lesion and 0 for background; any
// nonzero sample reads as lesion.
BinaryMask ReadMaskPng(const std::filesystem::path& path);
void WriteMaskPng(const std::filesystem::path& path, const BinaryMask& mask);

}  // namespace lesionseek

#endif  // LESIONSEEK_PNG_IO_H_
