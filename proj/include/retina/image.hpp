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

namespace retina {

/// Inputs live in [0,1]; contrast outputs are signed and live in [-1,1].
enum class ValueDomain { UnitInterval, Signed };

/// Slack allowed on the domain bounds. The green-bias row sums to
/// 0.9999999999999999 in binary64 and fused reductions can land one ulp past
/// an exact bound, so a strict check would reject correct results.
inline constexpr double kDomainSlack = 1e-9;

/// Planar (channel-major) image of double samples. Immutable once built; the
/// checked constructor enforces the value-domain invariant.
class ImagePlanar {
 public:
  /// Tag for kernels whose output range follows from their input range
  /// (box blur, channel duplication), letting them skip the O(n) scan.
  struct Unchecked {};

  ImagePlanar(std::size_t width, std::size_t height, std::size_t channels,
              std::vector<double> samples, ValueDomain domain);
  ImagePlanar(Unchecked, std::size_t width, std::size_t height,
              std::size_t channels, std::vector<double> samples,
              ValueDomain domain);

  static ImagePlanar filled(std::size_t width, std::size_t height,
                            std::size_t channels, double value,
                            ValueDomain domain = ValueDomain::UnitInterval);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t channels() const noexcept { return channels_; }
  std::size_t pixel_count() const noexcept { return width_ * height_; }
  ValueDomain domain() const noexcept { return domain_; }

  std::span<const double> samples() const noexcept { return samples_; }
  std::span<const double> plane(std::size_t c) const;
  double at(std::size_t c, std::size_t x, std::size_t y) const {
    return samples_[(c * height_ + y) * width_ + x];
  }

  bool same_shape(const ImagePlanar& other) const noexcept {
    return width_ == other.width_ && height_ == other.height_ &&
           channels_ == other.channels_;
  }

  /// Bit-for-bit equality of shape, domain and samples.
  friend bool operator==(const ImagePlanar&, const ImagePlanar&) = default;

 private:
  std::size_t width_;
  std::size_t height_;
  std::size_t channels_;
  std::vector<double> samples_;
  ValueDomain domain_;
};

/// Throws DomainError unless every sample is finite and inside `domain`.
void check_domain(std::span<const double> samples, ValueDomain domain);

/// Pixel-interleaved (HWC) samples from a planar image.
std::vector<double> to_interleaved(const ImagePlanar& img);

/// Planar image from pixel-interleaved (HWC) samples.
ImagePlanar from_interleaved(std::size_t width, std::size_t height,
                             std::size_t channels,
                             std::span<const double> interleaved,
                             ValueDomain domain);

}  // namespace retina
