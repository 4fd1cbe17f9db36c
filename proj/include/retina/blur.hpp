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
#include <optional>
#include <string_view>
#include <vector>

#include "retina/image.hpp"

namespace retina {

/// How the 3x3 window samples past the image edge: Replicate clamps the
/// coordinate, Zero reads 0.
enum class BorderPolicy { Replicate, Zero };

std::string_view border_name(BorderPolicy border);
std::optional<BorderPolicy> parse_border(std::string_view name);

/// Uniform 3x3 mean filter. Separable: each row is summed horizontally once
/// into a three-row ring, and the vertical sum of that ring, divided by 9,
/// gives the output row. Rows are processed in parallel strips; the
/// arithmetic for a given output pixel does not depend on the strip layout,
/// so results are bit-identical for every thread count.
ImagePlanar box_blur3(const ImagePlanar& img, BorderPolicy border = BorderPolicy::Replicate);

/// The original image followed by its d progressively blurred copies.
class BlurStack {
 public:
  std::size_t depth() const noexcept { return images_.size() - 1; }
  BorderPolicy border() const noexcept { return border_; }
  const std::vector<ImagePlanar>& images() const noexcept { return images_; }
  const ImagePlanar& original() const noexcept { return images_.front(); }
  const ImagePlanar& operator[](std::size_t i) const { return images_.at(i); }

 private:
  BlurStack(std::vector<ImagePlanar> images, BorderPolicy border)
      : images_(std::move(images)), border_(border) {}
  friend BlurStack build_blur_stack(const ImagePlanar&, std::size_t, BorderPolicy);

  std::vector<ImagePlanar> images_;
  BorderPolicy border_;
};

/// images[0] = img, images[i] = box_blur3(images[i-1]) for i = 1..depth.
BlurStack build_blur_stack(const ImagePlanar& img, std::size_t depth,
                           BorderPolicy border = BorderPolicy::Replicate);

}  // namespace retina
