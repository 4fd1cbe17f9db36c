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

#include "retina/blur.hpp"

#include <algorithm>
#include <vector>

#include "kernels.hpp"

namespace retina {

namespace detail {

namespace {
// Slightly below 1/9, so a window of nine samples <= 1 never maps above 1.
constexpr double kNinth = 1.0 / 9.0;
}  // namespace

void horizontal_sum(const double* row, double* hs, std::size_t width, BorderPolicy border) {
  const bool zero = border == BorderPolicy::Zero;
  if (width == 1) {
    const double edge = zero ? 0.0 : row[0];
    hs[0] = (edge + row[0]) + edge;
    return;
  }
  hs[0] = ((zero ? 0.0 : row[0]) + row[0]) + row[1];
  for (std::size_t x = 1; x + 1 < width; ++x) {
    hs[x] = (row[x - 1] + row[x]) + row[x + 1];
  }
  const std::size_t last = width - 1;
  hs[last] = (row[last - 1] + row[last]) + (zero ? 0.0 : row[last]);
}

void blur_strip(const double* src, double* dst, std::size_t width, std::size_t height,
                std::size_t y0, std::size_t y1, BorderPolicy border, double* ring) {
  const bool zero = border == BorderPolicy::Zero;
  double* slots[3] = {ring, ring + width, ring + 2 * width};

  // Fills `hs` with the horizontal sum of row y, where y may be one past
  // either edge.
  auto load = [&](std::ptrdiff_t y, double* hs) {
    if (y < 0 || y >= static_cast<std::ptrdiff_t>(height)) {
      if (zero) {
        for (std::size_t x = 0; x < width; ++x) hs[x] = 0.0;
        return;
      }
      y = y < 0 ? 0 : static_cast<std::ptrdiff_t>(height) - 1;
    }
    horizontal_sum(src + static_cast<std::size_t>(y) * width, hs, width, border);
  };

  const auto first = static_cast<std::ptrdiff_t>(y0);
  load(first - 1, slots[0]);
  load(first, slots[1]);
  for (std::size_t y = y0; y < y1; ++y) {
    load(static_cast<std::ptrdiff_t>(y) + 1, slots[2]);
    const double* above = slots[0];
    const double* mid = slots[1];
    const double* below = slots[2];
    double* out = dst + y * width;
    for (std::size_t x = 0; x < width; ++x) {
      out[x] = ((above[x] + mid[x]) + below[x]) * kNinth;
    }
    double* recycled = slots[0];
    slots[0] = slots[1];
    slots[1] = slots[2];
    slots[2] = recycled;
  }
}

void blur_planes(const double* src, double* dst, std::size_t width, std::size_t height,
                 std::size_t channels, BorderPolicy border) {
  const std::size_t strips = (height + kStripRows - 1) / kStripRows;
  const std::size_t tasks = strips * channels;
  const std::size_t plane = width * height;
#pragma omp parallel
  {
    std::vector<double> ring(3 * width);
#pragma omp for schedule(static)
    for (std::size_t t = 0; t < tasks; ++t) {
      const std::size_t c = t / strips;
      const std::size_t y0 = (t % strips) * kStripRows;
      const std::size_t y1 = std::min(height, y0 + kStripRows);
      blur_strip(src + c * plane, dst + c * plane, width, height, y0, y1, border,
                 ring.data());
    }
  }
}

}  // namespace detail

std::string_view border_name(BorderPolicy border) {
  return border == BorderPolicy::Zero ? "zero" : "replicate";
}

std::optional<BorderPolicy> parse_border(std::string_view name) {
  if (name == "replicate") return BorderPolicy::Replicate;
  if (name == "zero") return BorderPolicy::Zero;
  return std::nullopt;
}

ImagePlanar box_blur3(const ImagePlanar& img, BorderPolicy border) {
  std::vector<double> out(img.samples().size());
  detail::blur_planes(img.samples().data(), out.data(), img.width(), img.height(),
                      img.channels(), border);
  // A mean of in-domain samples stays in the domain.
  return ImagePlanar(ImagePlanar::Unchecked{}, img.width(), img.height(), img.channels(),
                     std::move(out), img.domain());
}

BlurStack build_blur_stack(const ImagePlanar& img, std::size_t depth, BorderPolicy border) {
  std::vector<ImagePlanar> images;
  images.reserve(depth + 1);
  images.push_back(img);
  for (std::size_t i = 1; i <= depth; ++i) {
    images.push_back(box_blur3(images.back(), border));
  }
  return BlurStack(std::move(images), border);
}

}  // namespace retina
