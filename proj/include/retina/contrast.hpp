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
#include <span>
#include <vector>

#include "retina/blur.hpp"
#include "retina/image.hpp"
#include "retina/reparam.hpp"

namespace retina {

/// Pointwise weights over the stacked (original, blur_1, ..., blur_d) RGB
/// tensor. Input index 3i+k is channel k of the i-fold blurred image, with
/// i = 0 the original.
///
/// Row c is M[c] on the original block and -M[c]/d on each blurred block, so
/// every row sums to zero for d >= 1 and equals M[c] for d = 0.
class FusedKernel {
 public:
  std::size_t depth() const noexcept { return depth_; }
  std::size_t out_channels() const noexcept { return out_channels_; }
  std::size_t inputs() const noexcept { return 3 * (depth_ + 1); }
  double weight(std::size_t c, std::size_t i) const { return weights_[c * inputs() + i]; }
  std::span<const double> row(std::size_t c) const {
    return std::span<const double>(weights_).subspan(c * inputs(), inputs());
  }
  ValueDomain output_domain() const noexcept { return domain_; }

 private:
  FusedKernel(std::size_t depth, std::size_t out_channels, std::vector<double> weights,
              ValueDomain domain)
      : depth_(depth), out_channels_(out_channels), weights_(std::move(weights)),
        domain_(domain) {}
  friend FusedKernel build_fused_kernel(const ReparamMatrix&, std::size_t);

  std::size_t depth_;
  std::size_t out_channels_;
  std::vector<double> weights_;
  ValueDomain domain_;
};

FusedKernel build_fused_kernel(const ReparamMatrix& m, std::size_t depth);

/// Reference formulation: M * original - (1/d) * sum_i M * blur_i, built from
/// apply_reparam. Serial. d = 0 gives apply_reparam(original, m).
ImagePlanar extract_contrast_direct(const BlurStack& stack, const ReparamMatrix& m);

/// One pointwise reduction over the stacked tensor. Zero weights are skipped;
/// the remaining terms are accumulated in input-index order, so each output
/// sample is independent of the thread count. Throws ShapeError on a depth
/// mismatch or a stack that is not RGB.
ImagePlanar extract_contrast_fused(const BlurStack& stack, const FusedKernel& kernel);

/// Three bit-identical copies of a single-channel image.
ImagePlanar expand_channels(const ImagePlanar& img);

}  // namespace retina
