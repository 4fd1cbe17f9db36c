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

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "retina/image.hpp"

namespace retina {

enum class ReparamKind { Grayscale, GrayscaleGreenBias, ColorOpponency, SingleColor };

/// Which color reparameterization to apply. `grayscale_channels` selects a
/// 1x3 or 3x3 matrix for the two grayscale kinds and is ignored otherwise.
struct ReparamVariant {
  ReparamKind kind = ReparamKind::SingleColor;
  std::size_t grayscale_channels = 3;

  /// Output channel count of the reparameterization (1 or 3).
  std::size_t output_channels() const;

  friend bool operator==(const ReparamVariant&, const ReparamVariant&) = default;
};

/// Shared coefficient constants so the direct and fused paths use identical
/// binary64 values.
namespace coeff {
inline constexpr double kThird = 1.0 / 3.0;
inline constexpr double kHalf = 0.5;
inline constexpr double kSixth = 1.0 / 6.0;
inline constexpr double kLumaRed = 0.299;
inline constexpr double kLumaGreen = 0.587;
inline constexpr double kLumaBlue = 0.114;
}  // namespace coeff

/// Row-major rows x 3 coefficient matrix mapping RGB to output channels.
class ReparamMatrix {
 public:
  using Row = std::array<double, 3>;

  explicit ReparamMatrix(std::vector<Row> rows);

  std::size_t rows() const noexcept { return rows_.size(); }
  const Row& row(std::size_t c) const { return rows_.at(c); }
  double operator()(std::size_t c, std::size_t k) const { return rows_[c][k]; }

  /// Signed when any coefficient is negative, i.e. outputs of [0,1] inputs
  /// may be negative.
  ValueDomain output_domain() const noexcept { return domain_; }

  friend bool operator==(const ReparamMatrix& a, const ReparamMatrix& b) {
    return a.rows_ == b.rows_;
  }

 private:
  std::vector<Row> rows_;
  ValueDomain domain_;
};

ReparamMatrix matrix_for(const ReparamVariant& variant);

/// out[c][p] = m[c][0] * R[p] + m[c][1] * G[p] + m[c][2] * B[p], evaluated in
/// that order with zero coefficients skipped. Throws ShapeError unless `img`
/// has 3 channels.
ImagePlanar apply_reparam(const ImagePlanar& img, const ReparamMatrix& m);

/// CLI / config names: grayscale, grayscale-green-bias, color-opponency,
/// single-color.
std::string_view kind_name(ReparamKind kind);
std::optional<ReparamKind> parse_kind(std::string_view name);

}  // namespace retina
