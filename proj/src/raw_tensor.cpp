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

#include "retina/raw_tensor.hpp"

#include <bit>
#include <cstring>
#include <string>

#include "retina/error.hpp"
#include "retina/image_io.hpp"

namespace retina {

namespace {

constexpr char kMagic[4] = {'R', 'T', 'F', '1'};

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int k = 0; k < 4; ++k) out.push_back(static_cast<std::uint8_t>(v >> (8 * k)));
}

std::uint32_t get_u32(std::span<const std::uint8_t> bytes, std::size_t at) {
  return std::uint32_t{bytes[at]} | std::uint32_t{bytes[at + 1]} << 8 |
         std::uint32_t{bytes[at + 2]} << 16 | std::uint32_t{bytes[at + 3]} << 24;
}

}  // namespace

std::vector<std::uint8_t> serialize_raw(const ImagePlanar& img) {
  std::vector<std::uint8_t> out;
  out.reserve(kRawHeaderSize + img.samples().size() * 4);
  out.insert(out.end(), kMagic, kMagic + 4);
  put_u32(out, static_cast<std::uint32_t>(img.width()));
  put_u32(out, static_cast<std::uint32_t>(img.height()));
  put_u32(out, static_cast<std::uint32_t>(img.channels()));
  put_u32(out, kRawDtypeF32LE);
  put_u32(out, img.domain() == ValueDomain::Signed ? 1 : 0);
  for (const double v : img.samples()) {
    put_u32(out, std::bit_cast<std::uint32_t>(static_cast<float>(v)));
  }
  return out;
}

ImagePlanar parse_raw(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kRawHeaderSize) {
    throw FormatError("raw tensor shorter than its 24-byte header");
  }
  if (std::memcmp(bytes.data(), kMagic, 4) != 0) {
    throw FormatError("raw tensor magic mismatch");
  }
  const std::uint32_t width = get_u32(bytes, 4);
  const std::uint32_t height = get_u32(bytes, 8);
  const std::uint32_t channels = get_u32(bytes, 12);
  const std::uint32_t dtype = get_u32(bytes, 16);
  const std::uint32_t domain = get_u32(bytes, 20);
  if (dtype != kRawDtypeF32LE) {
    throw FormatError("raw tensor dtype " + std::to_string(dtype) + " unsupported");
  }
  if (domain > 1) {
    throw FormatError("raw tensor domain tag " + std::to_string(domain) + " invalid");
  }
  const std::uint64_t count = std::uint64_t{width} * height * channels;
  const std::uint64_t payload = bytes.size() - kRawHeaderSize;
  if (payload != count * 4) {
    throw FormatError("raw tensor header declares " + std::to_string(width) + "x" +
                      std::to_string(height) + "x" + std::to_string(channels) +
                      " = " + std::to_string(count) + " samples but payload holds " +
                      std::to_string(payload) + " bytes");
  }
  std::vector<double> samples(count);
  for (std::size_t i = 0; i < count; ++i) {
    samples[i] = std::bit_cast<float>(get_u32(bytes, kRawHeaderSize + 4 * i));
  }
  try {
    return ImagePlanar(width, height, channels, std::move(samples),
                       domain == 1 ? ValueDomain::Signed : ValueDomain::UnitInterval);
  } catch (const ShapeError& e) {
    throw FormatError(std::string("raw tensor: ") + e.what());
  }
}

void write_raw(const ImagePlanar& img, const std::filesystem::path& path) {
  write_file(path, serialize_raw(img));
}

ImagePlanar read_raw(const std::filesystem::path& path) {
  return parse_raw(read_file(path));
}

}  // namespace retina
