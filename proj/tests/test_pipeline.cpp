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
#include <omp.h>

#include <fstream>
#include <random>

#include "retina/error.hpp"
#include "retina/image_io.hpp"
#include "retina/pipeline.hpp"
#include "retina/raw_tensor.hpp"
#include "retina/reference.hpp"
#include "test_util.hpp"

using namespace retina;
namespace fs = std::filesystem;

namespace {

PreprocessConfig make(ReparamKind kind, std::size_t depth, std::size_t channels = 3,
                      BorderPolicy border = BorderPolicy::Replicate) {
  PreprocessConfig cfg;
  cfg.variant = {kind, channels};
  cfg.depth = depth;
  cfg.border = border;
  return cfg;
}

void write_ppm(const fs::path& path, std::mt19937_64& rng, std::size_t w, std::size_t h) {
  write_file(path, encode_ppm(testing_util::random_image(rng, w, h)));
}

}  // namespace

TEST(Preprocess, SingleColorDepthZeroIsBaseline) {
  std::mt19937_64 rng(1);
  const auto img = testing_util::random_image(rng, 17, 9);
  EXPECT_EQ(preprocess(img, make(ReparamKind::SingleColor, 0)), img);
}

TEST(Preprocess, ExpandedGrayscaleIsChannelMean) {
  std::mt19937_64 rng(2);
  const auto img = testing_util::random_image(rng, 6, 4);
  auto cfg = make(ReparamKind::Grayscale, 0, 1);
  cfg.expand_to_three = true;
  const auto out = preprocess(img, cfg);
  ASSERT_EQ(out.channels(), 3u);
  for (std::size_t p = 0; p < img.pixel_count(); ++p) {
    const double mean = (img.plane(0)[p] + img.plane(1)[p] + img.plane(2)[p]) / 3.0;
    EXPECT_NEAR(out.plane(0)[p], mean, 1e-15);
    EXPECT_EQ(out.plane(0)[p], out.plane(1)[p]);
    EXPECT_EQ(out.plane(0)[p], out.plane(2)[p]);
  }
  cfg.expand_to_three = false;
  EXPECT_EQ(preprocess(img, cfg).channels(), 1u);
}

TEST(Preprocess, OpponencyOnConstantIsZero) {
  const auto out =
      preprocess(testing_util::rgb_constant(12, 9, 0.1, 0.5, 0.9), make(ReparamKind::ColorOpponency, 5));
  EXPECT_LE(testing_util::max_abs(out), 1e-12);
}

TEST(Preprocess, StreamedEqualsStackedBitForBit) {
  std::mt19937_64 rng(3);
  const std::pair<std::size_t, std::size_t> sizes[] = {{1, 1}, {1, 9}, {9, 1}, {2, 3},
                                                       {31, 17}, {8, 70}};
  const int saved = omp_get_max_threads();
  for (auto [w, h] : sizes) {
    const auto img = testing_util::random_image(rng, w, h);
    for (auto kind : {ReparamKind::Grayscale, ReparamKind::GrayscaleGreenBias,
                      ReparamKind::ColorOpponency, ReparamKind::SingleColor}) {
      for (std::size_t d : {0u, 1u, 2u, 5u, 10u}) {
        for (auto border : {BorderPolicy::Replicate, BorderPolicy::Zero}) {
          const auto cfg = make(kind, d, 3, border);
          const auto stacked = preprocess_stacked(img, cfg);
          for (int threads : {1, 3, 8}) {
            omp_set_num_threads(threads);
            ASSERT_EQ(preprocess(img, cfg), stacked)
                << w << "x" << h << " d=" << d << " threads=" << threads;
          }
        }
      }
    }
  }
  omp_set_num_threads(saved);
}

TEST(Preprocess, AgreesWithSerialReference) {
  std::mt19937_64 rng(4);
  const auto img = testing_util::random_image(rng, 21, 14);
  for (auto kind : {ReparamKind::Grayscale, ReparamKind::ColorOpponency}) {
    for (std::size_t d : {0u, 3u, 7u}) {
      for (std::size_t ch : {1u, 3u}) {
        if (kind == ReparamKind::ColorOpponency && ch == 1) continue;
        const auto cfg = make(kind, d, ch, BorderPolicy::Zero);
        EXPECT_LE(testing_util::max_abs_diff(preprocess(img, cfg),
                                             reference::preprocess_direct(img, cfg)),
                  1e-12);
      }
    }
  }
}

TEST(Preprocess, RejectsNonRgb) {
  EXPECT_THROW(preprocess(ImagePlanar::filled(3, 3, 1, 0.5), make(ReparamKind::Grayscale, 1)),
               ShapeError);
}

TEST(Config, RoundTripsThroughText) {
  auto cfg = make(ReparamKind::GrayscaleGreenBias, 7, 1, BorderPolicy::Zero);
  cfg.output = OutputFormat::All;
  cfg.expand_to_three = true;
  EXPECT_EQ(parse_config(serialize_config(cfg)), cfg);

  std::vector<std::string> seen;
  const auto parsed = parse_config("# comment\n  depth = 2\n\nvariant=color-opponency\n", {}, &seen);
  EXPECT_EQ(parsed.depth, 2u);
  EXPECT_EQ(parsed.variant.kind, ReparamKind::ColorOpponency);
  EXPECT_EQ(seen, (std::vector<std::string>{"depth", "variant"}));
}

TEST(Config, BadInputIsFormatError) {
  EXPECT_THROW(parse_config("colour = red\n"), FormatError);
  EXPECT_THROW(parse_config("depth = -1\n"), FormatError);
  EXPECT_THROW(parse_config("variant = sepia\n"), FormatError);
  EXPECT_THROW(parse_config("channels = 2\n"), FormatError);
  EXPECT_THROW(parse_config("border\n"), FormatError);
}

TEST(Manifest, ParsesPathsAndStems) {
  const auto m = parse_manifest("# header\na/one.png\nb/two.ppm\tnested/second\n", "/data");
  ASSERT_EQ(m.size(), 2u);
  EXPECT_EQ(m.entries()[0].input, fs::path("/data/a/one.png"));
  EXPECT_EQ(m.entries()[0].stem, "one");
  EXPECT_EQ(m.entries()[1].stem, "nested/second");
}

TEST(Manifest, RejectsCollidingOrEscapingStems) {
  EXPECT_THROW(parse_manifest("a/x.png\nb/x.png\n", "/d"), FormatError);
  EXPECT_THROW(parse_manifest("a.png\t../up\n", "/d"), FormatError);
  EXPECT_THROW(parse_manifest("a.png\t/abs\n", "/d"), FormatError);
}

TEST(Manifest, DirectoryScanIsSortedAndRecursive) {
  testing_util::TempDir dir("scan");
  std::mt19937_64 rng(5);
  fs::create_directories(dir.path() / "sub");
  write_ppm(dir.path() / "b.ppm", rng, 2, 2);
  write_ppm(dir.path() / "sub" / "a.ppm", rng, 2, 2);
  write_ppm(dir.path() / "a.ppm", rng, 2, 2);
  write_file(dir.path() / "notes.txt", Bytes{'x'});
  const auto m = manifest_from_directory(dir.path());
  ASSERT_EQ(m.size(), 3u);
  EXPECT_EQ(m.entries()[0].stem, "a");
  EXPECT_EQ(m.entries()[1].stem, "b");
  EXPECT_EQ(m.entries()[2].stem, "sub/a");
}

TEST(Batch, EmptyManifestIsVacuousSuccess) {
  testing_util::TempDir dir("empty");
  const auto report = process_dataset(DatasetManifest{}, make(ReparamKind::Grayscale, 2), 4,
                                      dir.path() / "out");
  EXPECT_TRUE(report.ok());
  EXPECT_TRUE(report.succeeded.empty());
  EXPECT_EQ(report.pixels, 0u);
}

TEST(Batch, CorruptEntryIsRecordedOthersContinue) {
  testing_util::TempDir dir("partial");
  std::mt19937_64 rng(6);
  write_ppm(dir.path() / "one.ppm", rng, 5, 4);
  write_file(dir.path() / "two.png", Bytes{0x89, 'P', 'N', 'G', 1, 2, 3});
  write_ppm(dir.path() / "three.ppm", rng, 3, 3);
  const DatasetManifest m({{dir.path() / "one.ppm", "one"},
                           {dir.path() / "two.png", "two"},
                           {dir.path() / "three.ppm", "three"}});
  const auto report = process_dataset(m, make(ReparamKind::ColorOpponency, 2), 2, dir.path() / "out");
  EXPECT_EQ(report.succeeded, (std::vector<std::string>{"one", "three"}));
  ASSERT_EQ(report.failed.size(), 1u);
  EXPECT_EQ(report.failed[0].input, dir.path() / "two.png");
  EXPECT_EQ(report.pixels, 29u);
  EXPECT_FALSE(report.ok());
  EXPECT_TRUE(fs::exists(dir.path() / "out" / "one.rtf"));
  EXPECT_FALSE(fs::exists(dir.path() / "out" / "two.rtf"));
  EXPECT_NE(format_report(report).find("failed=1"), std::string::npos);
}

TEST(Batch, ParallelismDoesNotChangeBytes) {
  testing_util::TempDir dir("det");
  std::mt19937_64 rng(7);
  std::vector<ManifestEntry> entries;
  for (int i = 0; i < 12; ++i) {
    const auto p = dir.path() / ("img" + std::to_string(i) + ".ppm");
    write_ppm(p, rng, 10 + static_cast<std::size_t>(i), 7 + static_cast<std::size_t>(i % 3));
    entries.push_back({p, "img" + std::to_string(i)});
  }
  const DatasetManifest m(entries);
  auto cfg = make(ReparamKind::ColorOpponency, 4);
  cfg.output = OutputFormat::All;
  ASSERT_TRUE(process_dataset(m, cfg, 1, dir.path() / "j1").ok());
  ASSERT_TRUE(process_dataset(m, cfg, 8, dir.path() / "j8").ok());
  for (const auto& e : entries) {
    for (const char* ext : {".rtf", ".pfm", ".png"}) {
      EXPECT_EQ(read_file(dir.path() / "j1" / (e.stem + ext)),
                read_file(dir.path() / "j8" / (e.stem + ext)));
    }
  }
}

TEST(Batch, RawOutputMatchesInMemoryResult) {
  testing_util::TempDir dir("raw");
  std::mt19937_64 rng(8);
  const auto img = testing_util::random_image(rng, 9, 5);
  write_file(dir.path() / "in.pfm", encode_pfm(img));
  const auto cfg = make(ReparamKind::Grayscale, 3);
  ASSERT_TRUE(process_dataset(DatasetManifest({{dir.path() / "in.pfm", "in"}}), cfg, 1,
                              dir.path() / "out")
                  .ok());
  const auto expected = preprocess(load_image(dir.path() / "in.pfm"), cfg);
  EXPECT_EQ(read_file(dir.path() / "out" / "in.rtf"), serialize_raw(expected));
}
