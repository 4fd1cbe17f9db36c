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

#include "retina/reparam.hpp"

#include <algorithm>

#include "retina/error.hpp"

namespace retina {

std::size_t ReparamVariant::output_channels() const {
  const bool gray = kind == ReparamKind::Grayscale || kind == ReparamKind::GrayscaleGreenBias;
  if (!gray) return 3;
  if (grayscale_channels != 1 && grayscale_channels != 3) {
    throw ShapeError("grayscale output must have 1 or 3 channels");
  }
  return grayscale_channels;
}

ReparamMatrix::ReparamMatrix(std::vector<Row> rows) : rows_(std::move(rows)) {
  if (rows_.size() != 1 && rows_.size() != 3) {
    throw ShapeError("reparameterization matrix must have 1 or 3 rows");
  }
  const bool negative = std::any_of(rows_.begin(), rows_.end(), [](const Row& r) {
    return std::any_of(r.begin(), r.end(), [](double v) { return v < 0.0; });
  });
  domain_ = negative ? ValueDomain::Signed : ValueDomain::UnitInterval;
}

ReparamMatrix matrix_for(const ReparamVariant& variant) {
  using namespace coeff;
  const std::size_t rows = variant.output_channels();
  switch (variant.kind) {
    case ReparamKind::Grayscale:
      return ReparamMatrix(std::vector<ReparamMatrix::Row>(rows, {kThird, kThird, kThird}));
    case ReparamKind::GrayscaleGreenBias:
      return ReparamMatrix(
          std::vector<ReparamMatrix::Row>(rows, {kLumaRed, kLumaGreen, kLumaBlue}));
    case ReparamKind::ColorOpponency:
      return ReparamMatrix({
          {kThird, kThird, kThird},   // black-white
          {kHalf, -kHalf, 0.0},       // red-green
          {-kSixth, -kSixth, kThird}  // blue-yellow
      });
    case ReparamKind::SingleColor:
      return ReparamMatrix({{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}});
  }
  throw Error("unknown reparameterization kind");
}

ImagePlanar apply_reparam(const ImagePlanar& img, const ReparamMatrix& m) {
  if (img.channels() != 3) {
    throw ShapeError("color reparameterization needs a 3-channel image, got " +
                     std::to_string(img.channels()));
  }
  const std::size_t n = img.pixel_count();
  std::vector<double> out(n * m.rows(), 0.0);
  for (std::size_t c = 0; c < m.rows(); ++c) {
    double* dst = out.data() + c * n;
    bool first = true;
    // Zero coefficients are skipped so that identity rows copy samples
    // bit-for-bit (0 * x would turn -0.0 into +0.0).
    for (std::size_t k = 0; k < 3; ++k) {
      const double w = m(c, k);
      if (w == 0.0) continue;
      const double* src = img.plane(k).data();
      if (first) {
        for (std::size_t p = 0; p < n; ++p) dst[p] = w * src[p];
        first = false;
      } else {
        for (std::size_t p = 0; p < n; ++p) dst[p] += w * src[p];
      }
    }
  }
  const ValueDomain domain = img.domain() == ValueDomain::Signed ? ValueDomain::Signed
                                                                 : m.output_domain();
  return ImagePlanar(img.width(), img.height(), m.rows(), std::move(out), domain);
}

std::string_view kind_name(ReparamKind kind) {
  switch (kind) {
    case ReparamKind::Grayscale:
      return "grayscale";
    case ReparamKind::GrayscaleGreenBias:
      return "grayscale-green-bias";
    case ReparamKind::ColorOpponency:
      return "color-opponency";
    case ReparamKind::SingleColor:
      return "single-color";
  }
  return "?";
}

std::optional<ReparamKind> parse_kind(std::string_view name) {
  for (auto k : {ReparamKind::Grayscale, ReparamKind::GrayscaleGreenBias,
                 ReparamKind::ColorOpponency, ReparamKind::SingleColor}) {
    if (kind_name(k) == name) return k;
  }
  return std::nullopt;
}

}  // namespace retina
