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

#include "retina/seg_metrics.hpp"

#include <cstdio>
#include <sstream>

#include "retina/error.hpp"

namespace retina {

ConfusionMatrix::ConfusionMatrix(std::size_t num_classes)
    : k_(num_classes), counts_(num_classes * num_classes, 0) {
  if (num_classes == 0) throw ShapeError("confusion matrix needs at least one class");
}

void ConfusionMatrix::add(std::size_t gt, std::size_t pred, std::uint64_t n) {
  if (gt >= k_ || pred >= k_) throw LabelError("class id out of range");
  counts_[gt * k_ + pred] += n;
  total_ += n;
}

ConfusionMatrix& ConfusionMatrix::merge(const ConfusionMatrix& other) {
  if (other.k_ != k_) throw ShapeError("cannot merge confusion matrices of different size");
  for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
  total_ += other.total_;
  return *this;
}

void accumulate(ConfusionMatrix& cm, const LabelMap& pred, const LabelMap& gt) {
  if (pred.width != gt.width || pred.height != gt.height ||
      pred.labels.size() != gt.labels.size() || gt.labels.size() != gt.width * gt.height) {
    throw ShapeError("prediction and ground truth dimensions differ");
  }
  const std::size_t k = cm.num_classes();
  // Validate first so a bad map leaves the matrix untouched.
  for (std::size_t i = 0; i < gt.labels.size(); ++i) {
    const std::uint32_t g = gt.labels[i];
    if (g == gt.ignore_id) continue;
    const std::uint32_t p = pred.labels[i];
    if (g >= k || p >= k) {
      const bool bad_gt = g >= k;
      throw LabelError(std::string(bad_gt ? "ground truth" : "prediction") + " label " +
                       std::to_string(bad_gt ? g : p) + " at pixel (" +
                       std::to_string(i % gt.width) + ", " + std::to_string(i / gt.width) +
                       ") is outside [0, " + std::to_string(k) + ")");
    }
  }
  ConfusionMatrix delta(k);
  for (std::size_t i = 0; i < gt.labels.size(); ++i) {
    if (gt.labels[i] == gt.ignore_id) continue;
    delta.add(gt.labels[i], pred.labels[i]);
  }
  cm.merge(delta);
}

MetricsReport finalize(const ConfusionMatrix& cm) {
  if (cm.total() == 0) throw EmptyEvaluationError("no pixels were accumulated");
  const std::size_t k = cm.num_classes();
  MetricsReport r;
  r.per_class_iou.resize(k);
  r.per_class_acc.resize(k);
  double iou_sum = 0.0;
  double acc_sum = 0.0;
  std::size_t iou_n = 0;
  std::size_t acc_n = 0;
  std::uint64_t trace = 0;
  for (std::size_t c = 0; c < k; ++c) {
    std::uint64_t gt_total = 0;
    std::uint64_t pred_total = 0;
    for (std::size_t j = 0; j < k; ++j) {
      gt_total += cm(c, j);
      pred_total += cm(j, c);
    }
    const std::uint64_t tp = cm(c, c);
    trace += tp;
    const std::uint64_t uni = gt_total + pred_total - tp;
    if (uni > 0) {
      const double iou = static_cast<double>(tp) / static_cast<double>(uni);
      r.per_class_iou[c] = iou;
      iou_sum += iou;
      ++iou_n;
    }
    if (gt_total > 0) {
      const double acc = static_cast<double>(tp) / static_cast<double>(gt_total);
      r.per_class_acc[c] = acc;
      acc_sum += acc;
      ++acc_n;
    }
  }
  r.miou = iou_n > 0 ? iou_sum / static_cast<double>(iou_n) : 0.0;
  r.macc = acc_n > 0 ? acc_sum / static_cast<double>(acc_n) : 0.0;
  r.aacc = static_cast<double>(trace) / static_cast<double>(cm.total());
  return r;
}

std::string format_metrics(const MetricsReport& report, std::uint64_t pixels) {
  std::ostringstream out;
  auto fmt = [](std::optional<double> v) {
    if (!v) return std::string("nan");
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", *v);
    return std::string(buf);
  };
  out << "classes=" << report.per_class_iou.size() << '\n' << "pixels=" << pixels << '\n';
  for (std::size_t c = 0; c < report.per_class_iou.size(); ++c) {
    out << "iou." << c << '=' << fmt(report.per_class_iou[c]) << '\n';
    out << "acc." << c << '=' << fmt(report.per_class_acc[c]) << '\n';
  }
  out << "mIoU=" << fmt(report.miou) << '\n'
      << "mAcc=" << fmt(report.macc) << '\n'
      << "aAcc=" << fmt(report.aacc) << '\n';
  return out.str();
}

}  // namespace retina
