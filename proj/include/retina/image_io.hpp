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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "retina/image.hpp"

namespace retina {

enum class ImageFormat { PNG, PPM, PFM };

using Bytes = std::vector<std::uint8_t>;

/// Format from a file extension (.png, .ppm/.pgm/.pnm, .pfm), if recognized.
std::optional<ImageFormat> format_from_extension(const std::filesystem::path& p);

/// Format from the leading magic bytes, if recognized.
std::optional<ImageFormat> sniff_format(std::span<const std::uint8_t> bytes);

/// Decodes PNG (8/16-bit gray or RGB, palette expanded to RGB), binary
/// PGM/PPM (P5/P6) or PFM (either byte order) into a UnitInterval image.
/// Integer samples are divided by the format's max value. Alpha channels are
/// rejected with UnsupportedFormatError; malformed data raises DecodeError.
/// No gamma handling is applied: samples are taken as stored.
ImagePlanar decode_image(std::span<const std::uint8_t> bytes, ImageFormat format);

/// 8-bit PNG rendering of a Signed image: v -> round((0.5 - 0.5 v) * 255),
/// clamped. Zero maps to 128, -1 to 255 (white) and +1 to 0.
Bytes encode_visualization(const ImagePlanar& img);

/// Visualization byte for one signed sample.
std::uint8_t visualization_level(double v);

/// Plain 8-bit PNG of a UnitInterval image (v -> round(v * 255)).
Bytes encode_png8(const ImagePlanar& img);

/// Binary 8-bit PGM (1 channel) or PPM (3 channels) of a UnitInterval image.
Bytes encode_ppm(const ImagePlanar& img);

/// Little-endian PFM, 32-bit float samples, rows stored bottom to top.
/// Accepts either domain.
Bytes encode_pfm(const ImagePlanar& img);

/// Single-channel 8-bit PNG holding raw label bytes.
struct LabelImage {
  std::size_t width;
  std::size_t height;
  std::vector<std::uint8_t> labels;
};
LabelImage decode_label_png(std::span<const std::uint8_t> bytes);
Bytes encode_label_png(const LabelImage& img);

Bytes read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

/// read_file + decode_image, with the format taken from the extension or,
/// failing that, from the magic bytes.
ImagePlanar load_image(const std::filesystem::path& path);

}  // namespace retina
