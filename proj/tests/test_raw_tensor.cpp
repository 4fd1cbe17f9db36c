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
#include "retina/image_io.hpp"
#include "retina/raw_tensor.hpp"
#include "test_util.hpp"

using namespace retina;

TEST(RawTensor, ZeroImageRoundTrip) {
  const ImagePlanar zeros = ImagePlanar::filled(2, 2, 3, 0.0);
  const auto bytes = serialize_raw(zeros);
  ASSERT_EQ(bytes.size(), kRawHeaderSize + 12 * 4);
  for (std::size_t i = kRawHeaderSize; i < bytes.size(); ++i) EXPECT_EQ(bytes[i], 0);
  EXPECT_EQ(parse_raw(bytes), zeros);
}

TEST(RawTensor, HeaderIsLittleEndianAndFixed) {
  const ImagePlanar img(3, 1, 1, {1.0, -0.5, 0.0}, ValueDomain::Signed);
  const auto b = serialize_raw(img);
  const std::vector<std::uint8_t> header{'R', 'T', 'F', '1', 3, 0, 0, 0, 1, 0, 0, 0,
                                         1,   0,   0,   0,   1, 0, 0, 0, 1, 0, 0, 0};
  EXPECT_EQ(std::vector<std::uint8_t>(b.begin(), b.begin() + 24), header);
  // 1.0f = 0x3f800000, -0.5f = 0xbf000000
  EXPECT_EQ(std::vector<std::uint8_t>(b.begin() + 24, b.begin() + 32),
            (std::vector<std::uint8_t>{0x00, 0x00, 0x80, 0x3f, 0x00, 0x00, 0x00, 0xbf}));
}

TEST(RawTensor, RandomSignedWithinFloatQuantization) {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<double> s(5 * 3);
    for (auto& v : s) v = u(rng);
    const ImagePlanar img(5, 3, 1, s, ValueDomain::Signed);
    const ImagePlanar back = parse_raw(serialize_raw(img));
    ASSERT_TRUE(back.same_shape(img));
    EXPECT_EQ(back.domain(), ValueDomain::Signed);
    for (std::size_t i = 0; i < s.size(); ++i) {
      const float f = static_cast<float>(s[i]);
      const double ulp = std::nextafter(std::abs(f), 2.0f) - std::abs(f);
      EXPECT_LE(std::abs(back.samples()[i] - s[i]), ulp);
    }
  }
}

TEST(RawTensor, SizeMismatchIsFormatError) {
  auto bytes = serialize_raw(ImagePlanar::filled(10, 1, 1, 0.0));
  bytes[4] = 4;   // width 4
  bytes[8] = 4;   // height 4
  bytes[12] = 3;  // channels 3 -> 48 samples declared, 10 present
  EXPECT_THROW(parse_raw(bytes), FormatError);
}

TEST(RawTensor, MagicAndTagsAreChecked) {
  auto bytes = serialize_raw(ImagePlanar::filled(1, 1, 1, 0.0));
  auto bad = bytes;
  bad[0] = 'X';
  EXPECT_THROW(parse_raw(bad), FormatError);
  bad = bytes;
  bad[16] = 2;
  EXPECT_THROW(parse_raw(bad), FormatError);
  bad = bytes;
  bad[20] = 7;
  EXPECT_THROW(parse_raw(bad), FormatError);
  EXPECT_THROW(parse_raw(std::vector<std::uint8_t>(10, 0)), FormatError);
}

TEST(RawTensor, FileRoundTrip) {
  testing_util::TempDir dir("raw");
  std::mt19937_64 rng(5);
  const ImagePlanar img = testing_util::random_image(rng, 4, 3, 3);
  write_raw(img, dir.path() / "x.rtf");
  const ImagePlanar back = read_raw(dir.path() / "x.rtf");
  for (std::size_t i = 0; i < img.samples().size(); ++i) {
    EXPECT_EQ(back.samples()[i], static_cast<double>(static_cast<float>(img.samples()[i])));
  }
}
