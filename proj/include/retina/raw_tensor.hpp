// Copyright 2026 The retina-prep Authors. All Rights Reserved.
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

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "retina/image.hpp"

namespace retina {

/// Raw tensor file layout (all integers little-endian), see docs/raw_tensor.md:
///
///   offset  size  field
///   0       4     magic "RTF1"
///   4       4     width     (u32)
///   8       4     height    (u32)
///   12      4     channels  (u32, 1 or 3)
///   16      4     dtype     (u32, 1 = float32 little-endian)
///   20      4     domain    (u32, 0 = UnitInterval, 1 = Signed)
///   24      ...   channel-major float32 samples
inline constexpr std::size_t kRawHeaderSize = 24;
inline constexpr std::uint32_t kRawDtypeF32LE = 1;

std::vector<std::uint8_t> serialize_raw(const ImagePlanar& img);
ImagePlanar parse_raw(std::span<const std::uint8_t> bytes);

void write_raw(const ImagePlanar& img, const std::filesystem::path& path);
ImagePlanar read_raw(const std::filesystem::path& path);

}  // namespace retina
