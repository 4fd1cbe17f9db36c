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

#include "retina/contrast.hpp"

#include <algorithm>
#include <string>

#include "retina/error.hpp"

namespace retina {

FusedKernel build_fused_kernel(const ReparamMatrix& m, std::size_t depth) {
  const std::size_t inputs = 3 * (depth + 1);
  std::vector<double> weights(m.rows() * inputs);
  const double d = static_cast<double>(depth);
  for (std::size_t c = 0; c < m.rows(); ++c) {
    double* row = weights.data() + c * inputs;
    for (std::size_t k = 0; k < 3; ++k) {
      row[k] = m(c, k);
      for (std::size_t i = 1; i <= depth; ++i) row[3 * i + k] = -(m(c, k) / d);
    }
  }
  const ValueDomain domain = depth == 0 ? m.output_domain() : ValueDomain::Signed;
  return FusedKernel(depth, m.rows(), std::move(weights), domain);
}

ImagePlanar extract_contrast_direct(const BlurStack& stack, const ReparamMatrix& m) {
  const ImagePlanar center = apply_reparam(stack.original(), m);
  const std::size_t depth = stack.depth();
  if (depth == 0) return center;

  std::vector<double> surround(center.samples().size(), 0.0);
  for (std::size_t i = 1; i <= depth; ++i) {
    const ImagePlanar r = apply_reparam(stack[i], m);
    const auto s = r.samples();
    for (std::size_t j = 0; j < surround.size(); ++j) surround[j] += s[j];
  }
  const double d = static_cast<double>(depth);
  const auto c = center.samples();
  std::vector<double> out(c.size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = c[j] - surround[j] / d;
  return ImagePlanar(center.width(), center.height(), center.channels(), std::move(out),
                     ValueDomain::Signed);
}

namespace {
constexpr std::size_t kBlock = 512;
}  // namespace

ImagePlanar extract_contrast_fused(const BlurStack& stack, const FusedKernel& kernel) {
  if (stack.depth() != kernel.depth()) {
    throw ShapeError("blur stack depth " + std::to_string(stack.depth()) +
                     " does not match kernel depth " + std::to_string(kernel.depth()));
  }
  const ImagePlanar& original = stack.original();
  if (original.channels() != 3) {
    throw ShapeError("fused contrast needs an RGB stack, got " +
                     std::to_string(original.channels()) + " channels");
  }
  const std::size_t n = original.pixel_count();
  const std::size_t out_channels = kernel.out_channels();

  // Stacked input planes with their weights, zero weights dropped, in input
  // index order.
  struct Term {
    const double* plane;
    double weight;
  };
  std::vector<std::vector<Term>> terms(out_channels);
  for (std::size_t c = 0; c < out_channels; ++c) {
    for (std::size_t i = 0; i < kernel.inputs(); ++i) {
      const double w = kernel.weight(c, i);
      if (w != 0.0) terms[c].push_back({stack[i / 3].plane(i % 3).data(), w});
    }
  }

  std::vector<double> out(n * out_channels);
  const std::size_t blocks = (n + kBlock - 1) / kBlock;
#pragma omp parallel for schedule(static)
  for (std::size_t b = 0; b < blocks; ++b) {
    const std::size_t p0 = b * kBlock;
    const std::size_t len = std::min(kBlock, n - p0);
    for (std::size_t c = 0; c < out_channels; ++c) {
      double* acc = out.data() + c * n + p0;
      const auto& row = terms[c];
      if (row.empty()) {
        std::fill(acc, acc + len, 0.0);
        continue;
      }
      const double* x0 = row[0].plane + p0;
      const double w0 = row[0].weight;
      for (std::size_t j = 0; j < len; ++j) acc[j] = w0 * x0[j];
      for (std::size_t t = 1; t < row.size(); ++t) {
        const double* x = row[t].plane + p0;
        const double w = row[t].weight;
        for (std::size_t j = 0; j < len; ++j) acc[j] += w * x[j];
      }
    }
  }
  return ImagePlanar(original.width(), original.height(), out_channels, std::move(out),
                     kernel.output_domain());
}

ImagePlanar expand_channels(const ImagePlanar& img) {
  if (img.channels() != 1) {
    throw ShapeError("channel expansion needs a 1-channel image, got " +
                     std::to_string(img.channels()));
  }
  const auto plane = img.samples();
  std::vector<double> out;
  out.reserve(plane.size() * 3);
  for (int k = 0; k < 3; ++k) out.insert(out.end(), plane.begin(), plane.end());
  return ImagePlanar(ImagePlanar::Unchecked{}, img.width(), img.height(), 3, std::move(out),
                     img.domain());
}

}  // namespace retina
