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

// Parallel kernels against the serial reference implementations.

#include <benchmark/benchmark.h>

#include <random>

#include "retina/contrast.hpp"
#include "retina/pipeline.hpp"
#include "retina/reference.hpp"

using namespace retina;

namespace {

ImagePlanar random_rgb(std::size_t w, std::size_t h) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> s(w * h * 3);
  for (auto& v : s) v = u(rng);
  return ImagePlanar(w, h, 3, std::move(s), ValueDomain::UnitInterval);
}

const PreprocessConfig kOpponencyD5{{ReparamKind::ColorOpponency, 3}, 5};

void set_pixels(benchmark::State& state, std::size_t w, std::size_t h) {
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * w * h));
}

void BM_BlurReference(benchmark::State& state) {
  const auto w = static_cast<std::size_t>(state.range(0));
  const auto img = random_rgb(w, w / 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(reference::box_blur3_direct(img, BorderPolicy::Replicate));
  }
  set_pixels(state, w, w / 2);
}

void BM_BlurSeparable(benchmark::State& state) {
  const auto w = static_cast<std::size_t>(state.range(0));
  const auto img = random_rgb(w, w / 2);
  for (auto _ : state) benchmark::DoNotOptimize(box_blur3(img, BorderPolicy::Replicate));
  set_pixels(state, w, w / 2);
}

void BM_ContrastDirect(benchmark::State& state) {
  const auto w = static_cast<std::size_t>(state.range(0));
  const auto stack = build_blur_stack(random_rgb(w, w / 2), 5);
  const auto m = matrix_for({ReparamKind::ColorOpponency, 3});
  for (auto _ : state) benchmark::DoNotOptimize(extract_contrast_direct(stack, m));
  set_pixels(state, w, w / 2);
}

void BM_ContrastFused(benchmark::State& state) {
  const auto w = static_cast<std::size_t>(state.range(0));
  const auto stack = build_blur_stack(random_rgb(w, w / 2), 5);
  const auto k = build_fused_kernel(matrix_for({ReparamKind::ColorOpponency, 3}), 5);
  for (auto _ : state) benchmark::DoNotOptimize(extract_contrast_fused(stack, k));
  set_pixels(state, w, w / 2);
}

void BM_PreprocessReference(benchmark::State& state) {
  const auto w = static_cast<std::size_t>(state.range(0));
  const auto img = random_rgb(w, w / 2);
  for (auto _ : state) benchmark::DoNotOptimize(reference::preprocess_direct(img, kOpponencyD5));
  set_pixels(state, w, w / 2);
}

void BM_PreprocessStacked(benchmark::State& state) {
  const auto w = static_cast<std::size_t>(state.range(0));
  const auto img = random_rgb(w, w / 2);
  for (auto _ : state) benchmark::DoNotOptimize(preprocess_stacked(img, kOpponencyD5));
  set_pixels(state, w, w / 2);
}

void BM_PreprocessStreamed(benchmark::State& state) {
  const auto w = static_cast<std::size_t>(state.range(0));
  const auto img = random_rgb(w, w / 2);
  for (auto _ : state) benchmark::DoNotOptimize(preprocess(img, kOpponencyD5));
  set_pixels(state, w, w / 2);
}

}  // namespace

BENCHMARK(BM_BlurReference)->Arg(512)->Arg(2048)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BlurSeparable)->Arg(512)->Arg(2048)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ContrastDirect)->Arg(512)->Arg(2048)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ContrastFused)->Arg(512)->Arg(2048)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PreprocessReference)->Arg(512)->Arg(2048)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PreprocessStacked)->Arg(512)->Arg(2048)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PreprocessStreamed)->Arg(512)->Arg(2048)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
