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

// Internal per-plane kernels shared by blur.cpp, contrast.cpp and pipeline.cpp.

#include <cstddef>

#include "retina/blur.hpp"

namespace retina::detail {

/// Rows per parallel strip of the blur. Each strip recomputes two halo rows
/// of horizontal sums.
inline constexpr std::size_t kStripRows = 32;

/// Horizontal 3-tap sum of one row: hs[x] = (row[x-1] + row[x]) + row[x+1].
void horizontal_sum(const double* row, double* hs, std::size_t width, BorderPolicy border);

/// Blurs rows [y0, y1) of a width x height plane from `src` into `dst`.
/// `ring` is scratch space for 3 * width doubles.
void blur_strip(const double* src, double* dst, std::size_t width, std::size_t height,
                std::size_t y0, std::size_t y1, BorderPolicy border, double* ring);

/// Blurs every plane of a planar buffer (channels planes of width*height).
void blur_planes(const double* src, double* dst, std::size_t width, std::size_t height,
                 std::size_t channels, BorderPolicy border);

}  // namespace retina::detail
