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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "retina/error.hpp"
#include "retina/reparam.hpp"
#include "test_util.hpp"

using namespace retina;

namespace {

const ReparamVariant kGray3{ReparamKind::Grayscale, 3};
const ReparamVariant kGray1{ReparamKind::Grayscale, 1};
const ReparamVariant kGreen3{ReparamKind::GrayscaleGreenBias, 3};
const ReparamVariant kGreen1{ReparamKind::GrayscaleGreenBias, 1};
const ReparamVariant kOpp{ReparamKind::ColorOpponency, 3};
const ReparamVariant kSingle{ReparamKind::SingleColor, 3};

}  // namespace

TEST(MatrixFor, CoefficientTables) {
  const auto gray = matrix_for(kGray3);
  ASSERT_EQ(gray.rows(), 3u);
  for (std::size_t c = 0; c < 3; ++c)
    for (std::size_t k = 0; k < 3; ++k) EXPECT_EQ(gray(c, k), 1.0 / 3.0);

  const auto green = matrix_for(kGreen3);
  for (std::size_t c = 0; c < 3; ++c) {
    EXPECT_EQ(green.row(c), (ReparamMatrix::Row{0.299, 0.587, 0.114}));
  }

  const auto opp = matrix_for(kOpp);
  EXPECT_EQ(opp.row(0), (ReparamMatrix::Row{1.0 / 3, 1.0 / 3, 1.0 / 3}));
  EXPECT_EQ(opp.row(1), (ReparamMatrix::Row{0.5, -0.5, 0.0}));
  EXPECT_EQ(opp.row(2), (ReparamMatrix::Row{-1.0 / 6, -1.0 / 6, 1.0 / 3}));
  EXPECT_EQ(opp.output_domain(), ValueDomain::Signed);

  EXPECT_EQ(matrix_for(kSingle),
            ReparamMatrix({{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}}));
}

TEST(MatrixFor, SingleRowOnlyForOneChannelGrayscale) {
  EXPECT_EQ(matrix_for(kGray1).rows(), 1u);
  EXPECT_EQ(matrix_for(kGreen1).rows(), 1u);
  EXPECT_EQ(matrix_for({ReparamKind::ColorOpponency, 1}).rows(), 3u);
  EXPECT_EQ(matrix_for({ReparamKind::SingleColor, 1}).rows(), 3u);
  EXPECT_THROW(matrix_for({ReparamKind::Grayscale, 2}), ShapeError);
}

TEST(ApplyReparam, OpponencyOfPureRed) {
  const auto out = apply_reparam(testing_util::rgb_constant(1, 1, 1, 0, 0), matrix_for(kOpp));
  EXPECT_EQ(out.plane(0)[0], 1.0 / 3.0);
  EXPECT_EQ(out.plane(1)[0], 0.5);
  EXPECT_EQ(out.plane(2)[0], -1.0 / 6.0);
  EXPECT_EQ(out.domain(), ValueDomain::Signed);
}

TEST(ApplyReparam, GreenBiasOfBasisPixels) {
  const auto m = matrix_for(kGreen3);
  const double expect[3] = {0.299, 0.587, 0.114};
  for (int k = 0; k < 3; ++k) {
    const auto out = apply_reparam(
        testing_util::rgb_constant(1, 1, k == 0, k == 1, k == 2), m);
    for (std::size_t c = 0; c < 3; ++c) EXPECT_EQ(out.plane(c)[0], expect[k]);
  }
}

TEST(ApplyReparam, AchromaticInputsZeroOpponentChannels) {
  std::mt19937_64 rng(1);
  const auto m = matrix_for(kOpp);
  for (int trial = 0; trial < 20; ++trial) {
    const auto base = testing_util::random_image(rng, 6, 5, 1);
    std::vector<double> s;
    for (int k = 0; k < 3; ++k) s.insert(s.end(), base.samples().begin(), base.samples().end());
    const ImagePlanar gray(6, 5, 3, s, ValueDomain::UnitInterval);
    const auto out = apply_reparam(gray, m);
    for (std::size_t p = 0; p < 30; ++p) {
      EXPECT_NEAR(out.plane(0)[p], base.samples()[p], 1e-15);
      EXPECT_LE(std::abs(out.plane(1)[p]), 1e-12);
      EXPECT_LE(std::abs(out.plane(2)[p]), 1e-12);
    }
  }
}

TEST(ApplyReparam, GrayscalePlanesIdenticalAndSingleColorIsIdentity) {
  std::mt19937_64 rng(2);
  const auto img = testing_util::random_image(rng, 7, 4);
  const auto gray = apply_reparam(img, matrix_for(kGray3));
  for (std::size_t p = 0; p < img.pixel_count(); ++p) {
    EXPECT_EQ(gray.plane(0)[p], gray.plane(1)[p]);
    EXPECT_EQ(gray.plane(1)[p], gray.plane(2)[p]);
  }
  EXPECT_EQ(apply_reparam(img, matrix_for(kSingle)), img);

  const ImagePlanar negzero(1, 1, 3, {-0.0, 0.5, 1.0}, ValueDomain::UnitInterval);
  const auto same = apply_reparam(negzero, matrix_for(kSingle));
  EXPECT_TRUE(std::signbit(same.plane(0)[0]));
}

TEST(ApplyReparam, IsLinear) {
  std::mt19937_64 rng(3);
  for (auto v : {kGray3, kGreen1, kOpp, kSingle}) {
    const auto m = matrix_for(v);
    const auto x = testing_util::random_image(rng, 5, 5);
    const auto y = testing_util::random_image(rng, 5, 5);
    const double a = 0.3;
    const double b = 0.6;
    std::vector<double> mix(x.samples().size());
    for (std::size_t i = 0; i < mix.size(); ++i) {
      mix[i] = a * x.samples()[i] + b * y.samples()[i];
    }
    const auto lhs = apply_reparam(ImagePlanar(5, 5, 3, mix, ValueDomain::UnitInterval), m);
    const auto rx = apply_reparam(x, m);
    const auto ry = apply_reparam(y, m);
    for (std::size_t i = 0; i < lhs.samples().size(); ++i) {
      EXPECT_NEAR(lhs.samples()[i], a * rx.samples()[i] + b * ry.samples()[i], 1e-14);
    }
  }
}

TEST(ApplyReparam, NeedsThreeChannels) {
  EXPECT_THROW(apply_reparam(ImagePlanar::filled(2, 2, 1, 0.5), matrix_for(kGray3)), ShapeError);
}

TEST(VariantNames, ExactStrings) {
  EXPECT_EQ(kind_name(ReparamKind::GrayscaleGreenBias), "grayscale-green-bias");
  EXPECT_EQ(parse_kind("color-opponency"), ReparamKind::ColorOpponency);
  EXPECT_EQ(parse_kind("single-color"), ReparamKind::SingleColor);
  EXPECT_EQ(parse_kind("grayscale"), ReparamKind::Grayscale);
  EXPECT_FALSE(parse_kind("Grayscale"));
}
