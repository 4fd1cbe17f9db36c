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

#include "retina/reference.hpp"

#include <algorithm>

#include "retina/contrast.hpp"
#include "retina/reparam.hpp"

namespace retina::reference {

ImagePlanar box_blur3_direct(const ImagePlanar& img, BorderPolicy border) {
  const auto w = static_cast<std::ptrdiff_t>(img.width());
  const auto h = static_cast<std::ptrdiff_t>(img.height());
  std::vector<double> out(img.samples().size());
  for (std::size_t c = 0; c < img.channels(); ++c) {
    for (std::ptrdiff_t y = 0; y < h; ++y) {
      for (std::ptrdiff_t x = 0; x < w; ++x) {
        double sum = 0.0;
        for (std::ptrdiff_t dy = -1; dy <= 1; ++dy) {
          for (std::ptrdiff_t dx = -1; dx <= 1; ++dx) {
            std::ptrdiff_t sx = x + dx;
            std::ptrdiff_t sy = y + dy;
            const bool outside = sx < 0 || sy < 0 || sx >= w || sy >= h;
            if (outside && border == BorderPolicy::Zero) continue;
            sx = std::clamp<std::ptrdiff_t>(sx, 0, w - 1);
            sy = std::clamp<std::ptrdiff_t>(sy, 0, h - 1);
            sum += img.at(c, static_cast<std::size_t>(sx), static_cast<std::size_t>(sy));
          }
        }
        out[(c * img.height() + static_cast<std::size_t>(y)) * img.width() +
            static_cast<std::size_t>(x)] = sum / 9.0;
      }
    }
  }
  return ImagePlanar(img.width(), img.height(), img.channels(), std::move(out), img.domain());
}

std::vector<ImagePlanar> blur_stack_direct(const ImagePlanar& img, std::size_t depth,
                                           BorderPolicy border) {
  std::vector<ImagePlanar> stack{img};
  for (std::size_t i = 1; i <= depth; ++i) {
    stack.push_back(box_blur3_direct(stack.back(), border));
  }
  return stack;
}

ImagePlanar preprocess_direct(const ImagePlanar& img, const PreprocessConfig& cfg) {
  const ReparamMatrix m = matrix_for(cfg.variant);
  const auto stack = blur_stack_direct(img, cfg.depth, cfg.border);
  ImagePlanar center = apply_reparam(stack[0], m);
  if (cfg.depth > 0) {
    std::vector<double> surround(center.samples().size(), 0.0);
    for (std::size_t i = 1; i <= cfg.depth; ++i) {
      const ImagePlanar r = apply_reparam(stack[i], m);
      for (std::size_t j = 0; j < surround.size(); ++j) surround[j] += r.samples()[j];
    }
    std::vector<double> out(surround.size());
    const double d = static_cast<double>(cfg.depth);
    for (std::size_t j = 0; j < out.size(); ++j) {
      out[j] = center.samples()[j] - surround[j] / d;
    }
    center = ImagePlanar(center.width(), center.height(), center.channels(), std::move(out),
                         ValueDomain::Signed);
  }
  if (cfg.expand_to_three && center.channels() == 1) return expand_channels(center);
  return center;
}

}  // namespace retina::reference
