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

// Serial, unoptimized kernels kept as test oracles and benchmark baselines
// for the parallel paths in blur.hpp / contrast.hpp / pipeline.hpp.

#include <cstddef>
#include <vector>

#include "retina/blur.hpp"
#include "retina/config.hpp"
#include "retina/image.hpp"

namespace retina::reference {

/// Direct 9-tap 3x3 mean: (sum over dy, then dx, of the window) / 9.
ImagePlanar box_blur3_direct(const ImagePlanar& img, BorderPolicy border);

/// d-fold box_blur3_direct, returning [img, blur_1, ..., blur_d].
std::vector<ImagePlanar> blur_stack_direct(const ImagePlanar& img, std::size_t depth,
                                           BorderPolicy border);

/// preprocess() through the direct 9-tap blur and extract_contrast_direct.
ImagePlanar preprocess_direct(const ImagePlanar& img, const PreprocessConfig& cfg);

}  // namespace retina::reference
