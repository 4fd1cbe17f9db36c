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

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "retina/image.hpp"

namespace testing_util {

inline retina::ImagePlanar random_image(std::mt19937_64& rng, std::size_t w, std::size_t h,
                                        std::size_t c = 3) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> s(w * h * c);
  for (auto& v : s) v = u(rng);
  return retina::ImagePlanar(w, h, c, std::move(s), retina::ValueDomain::UnitInterval);
}

inline retina::ImagePlanar impulse(std::size_t size, std::size_t channels = 3) {
  std::vector<double> s(size * size * channels, 0.0);
  const std::size_t mid = size / 2;
  for (std::size_t c = 0; c < channels; ++c) s[(c * size + mid) * size + mid] = 1.0;
  return retina::ImagePlanar(size, size, channels, std::move(s),
                             retina::ValueDomain::UnitInterval);
}

inline retina::ImagePlanar rgb_constant(std::size_t w, std::size_t h, double r, double g,
                                        double b) {
  std::vector<double> s;
  for (double v : {r, g, b}) s.insert(s.end(), w * h, v);
  return retina::ImagePlanar(w, h, 3, std::move(s), retina::ValueDomain::UnitInterval);
}

inline double max_abs(const retina::ImagePlanar& img) {
  double m = 0.0;
  for (double v : img.samples()) m = std::max(m, std::abs(v));
  return m;
}

inline double max_abs_diff(const retina::ImagePlanar& a, const retina::ImagePlanar& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.samples().size(); ++i) {
    m = std::max(m, std::abs(a.samples()[i] - b.samples()[i]));
  }
  return m;
}

/// Fresh empty directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("retina-" + tag + "-" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace testing_util
