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
#include <limits>
#include <random>

#include "retina/error.hpp"
#include "retina/image.hpp"
#include "test_util.hpp"

using namespace retina;

TEST(ImagePlanar, StoresChannelMajorPlanes) {
  const ImagePlanar img(2, 1, 3, {0.1, 0.2, 0.3, 0.4, 0.5, 0.6}, ValueDomain::UnitInterval);
  EXPECT_EQ(img.pixel_count(), 2u);
  EXPECT_DOUBLE_EQ(img.plane(1)[0], 0.3);
  EXPECT_DOUBLE_EQ(img.at(2, 1, 0), 0.6);
  EXPECT_THROW(img.plane(3), ShapeError);
}

TEST(ImagePlanar, RejectsBadShapes) {
  EXPECT_THROW(ImagePlanar(0, 1, 1, {}, ValueDomain::UnitInterval), ShapeError);
  EXPECT_THROW(ImagePlanar(1, 1, 2, {0.0, 0.0}, ValueDomain::UnitInterval), ShapeError);
  EXPECT_THROW(ImagePlanar(2, 2, 1, {0.0, 0.0, 0.0}, ValueDomain::UnitInterval), ShapeError);
}

TEST(ImagePlanar, EnforcesValueDomain) {
  EXPECT_THROW(ImagePlanar(1, 1, 1, {1.5}, ValueDomain::UnitInterval), DomainError);
  EXPECT_THROW(ImagePlanar(1, 1, 1, {-0.25}, ValueDomain::UnitInterval), DomainError);
  EXPECT_THROW(ImagePlanar(1, 1, 1, {-1.5}, ValueDomain::Signed), DomainError);
  EXPECT_THROW(ImagePlanar(1, 1, 1, {std::nan("")}, ValueDomain::Signed), DomainError);
  EXPECT_NO_THROW(ImagePlanar(1, 1, 1, {-1.0}, ValueDomain::Signed));
  EXPECT_NO_THROW(ImagePlanar(1, 1, 1, {1.0 + 1e-12}, ValueDomain::UnitInterval));
}

TEST(ImagePlanar, InterleaveRoundTripIsExact) {
  std::mt19937_64 rng(7);
  for (std::size_t trial = 0; trial < 20; ++trial) {
    const std::size_t w = 1 + rng() % 9;
    const std::size_t h = 1 + rng() % 9;
    const std::size_t c = (rng() % 2) ? 3 : 1;
    const ImagePlanar img = testing_util::random_image(rng, w, h, c);
    const auto inter = to_interleaved(img);
    EXPECT_EQ(from_interleaved(w, h, c, inter, img.domain()), img);
  }
}

TEST(ImagePlanar, InterleavedLayoutIsPixelMajor) {
  const ImagePlanar img(2, 1, 3, {0.1, 0.2, 0.3, 0.4, 0.5, 0.6}, ValueDomain::UnitInterval);
  const std::vector<double> expect{0.1, 0.3, 0.5, 0.2, 0.4, 0.6};
  EXPECT_EQ(to_interleaved(img), expect);
  EXPECT_THROW(from_interleaved(2, 2, 3, expect, ValueDomain::UnitInterval), ShapeError);
}
