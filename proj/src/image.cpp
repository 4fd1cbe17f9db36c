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

#include "retina/image.hpp"

#include <cmath>
#include <string>

#include "retina/error.hpp"

namespace retina {

namespace {

void check_shape(std::size_t width, std::size_t height, std::size_t channels,
                 std::size_t n) {
  if (width == 0 || height == 0) {
    throw ShapeError("image dimensions must be at least 1x1");
  }
  if (channels != 1 && channels != 3) {
    throw ShapeError("image must have 1 or 3 channels, got " +
                     std::to_string(channels));
  }
  if (n != width * height * channels) {
    throw ShapeError("sample count " + std::to_string(n) +
                     " does not match " + std::to_string(width) + "x" +
                     std::to_string(height) + "x" + std::to_string(channels));
  }
}

}  // namespace

ImagePlanar::ImagePlanar(std::size_t width, std::size_t height,
                         std::size_t channels, std::vector<double> samples,
                         ValueDomain domain)
    : ImagePlanar(Unchecked{}, width, height, channels, std::move(samples),
                  domain) {
  check_domain(samples_, domain_);
}

ImagePlanar::ImagePlanar(Unchecked, std::size_t width, std::size_t height,
                         std::size_t channels, std::vector<double> samples,
                         ValueDomain domain)
    : width_(width),
      height_(height),
      channels_(channels),
      samples_(std::move(samples)),
      domain_(domain) {
  check_shape(width_, height_, channels_, samples_.size());
}

ImagePlanar ImagePlanar::filled(std::size_t width, std::size_t height,
                                std::size_t channels, double value,
                                ValueDomain domain) {
  return ImagePlanar(width, height, channels,
                     std::vector<double>(width * height * channels, value),
                     domain);
}

std::span<const double> ImagePlanar::plane(std::size_t c) const {
  if (c >= channels_) {
    throw ShapeError("plane index " + std::to_string(c) + " out of range");
  }
  return std::span<const double>(samples_).subspan(c * pixel_count(),
                                                    pixel_count());
}

void check_domain(std::span<const double> samples, ValueDomain domain) {
  const double lo = domain == ValueDomain::UnitInterval ? 0.0 : -1.0;
  const double hi = 1.0;
  bool ok = true;
  std::size_t bad = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double v = samples[i];
    // Written so NaN fails too.
    if (!(v >= lo - kDomainSlack && v <= hi + kDomainSlack)) {
      ok = false;
      bad = i;
      break;
    }
  }
  if (!ok) {
    throw DomainError(
        std::string("sample ") + std::to_string(bad) + " = " +
        std::to_string(samples[bad]) + " outside the " +
        (domain == ValueDomain::UnitInterval ? "[0,1]" : "[-1,1]") +
        " domain");
  }
}

std::vector<double> to_interleaved(const ImagePlanar& img) {
  const std::size_t n = img.pixel_count();
  const std::size_t ch = img.channels();
  std::vector<double> out(n * ch);
  for (std::size_t c = 0; c < ch; ++c) {
    const auto plane = img.plane(c);
    for (std::size_t p = 0; p < n; ++p) out[p * ch + c] = plane[p];
  }
  return out;
}

ImagePlanar from_interleaved(std::size_t width, std::size_t height,
                             std::size_t channels,
                             std::span<const double> interleaved,
                             ValueDomain domain) {
  const std::size_t n = width * height;
  if (interleaved.size() != n * channels) {
    throw ShapeError("interleaved buffer has " +
                     std::to_string(interleaved.size()) + " samples, expected " +
                     std::to_string(n * channels));
  }
  std::vector<double> planar(n * channels);
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t c = 0; c < channels; ++c) {
      planar[c * n + p] = interleaved[p * channels + c];
    }
  }
  return ImagePlanar(width, height, channels, std::move(planar), domain);
}

}  // namespace retina
