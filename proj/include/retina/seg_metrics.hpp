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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace retina {

inline constexpr std::uint32_t kDefaultIgnoreId = 255;

/// Per-pixel class ids, row-major. Pixels equal to `ignore_id` are excluded
/// from every statistic when the map is used as ground truth.
struct LabelMap {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint32_t> labels;
  std::uint32_t ignore_id = kDefaultIgnoreId;
};

/// K x K pixel counts, rows = ground truth, columns = prediction.
class ConfusionMatrix {
 public:
  explicit ConfusionMatrix(std::size_t num_classes);

  std::size_t num_classes() const noexcept { return k_; }
  std::uint64_t operator()(std::size_t gt, std::size_t pred) const {
    return counts_[gt * k_ + pred];
  }
  std::uint64_t total() const noexcept { return total_; }

  /// Adds one observation.
  void add(std::size_t gt, std::size_t pred, std::uint64_t n = 1);

  /// Elementwise sum; associative and commutative.
  ConfusionMatrix& merge(const ConfusionMatrix& other);

  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;

 private:
  std::size_t k_;
  std::vector<std::uint64_t> counts_;
  std::uint64_t total_ = 0;
};

/// Counts every pixel whose ground truth is not gt.ignore_id. Throws
/// ShapeError on differing dimensions and LabelError (naming the pixel) on a
/// class id >= K in either map at a counted pixel.
void accumulate(ConfusionMatrix& cm, const LabelMap& pred, const LabelMap& gt);

struct MetricsReport {
  /// Empty where the denominator is zero (class absent from both maps for
  /// IoU, absent from ground truth for accuracy).
  std::vector<std::optional<double>> per_class_iou;
  std::vector<std::optional<double>> per_class_acc;
  double miou = 0.0;
  double macc = 0.0;
  double aacc = 0.0;
};

/// IoU_c = TP / (TP + FP + FN), Acc_c = TP / (TP + FN), means over the classes
/// that have a value, aAcc = trace / total. Throws EmptyEvaluationError when
/// nothing has been accumulated.
MetricsReport finalize(const ConfusionMatrix& cm);

/// key=value lines, fractions to 4 decimal places, "nan" for classes without
/// a value.
std::string format_metrics(const MetricsReport& report, std::uint64_t pixels);

}  // namespace retina
