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

#include "retina/pipeline.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <set>
#include <sstream>

#include "kernels.hpp"
#include "retina/contrast.hpp"
#include "retina/error.hpp"
#include "retina/image_io.hpp"
#include "retina/raw_tensor.hpp"

namespace retina {

namespace {

constexpr double kNinth = 1.0 / 9.0;

/// Streams one band of output rows through per-level line buffers.
///
/// Level 0 is the input; level L row r is the 3x3 mean of level L-1 rows
/// r-1..r+1. Each level keeps a ring of its most recent rows (values and
/// their horizontal sums), deep enough that the fused reduction for output
/// row y still finds row y of every level. Rows are produced with the same
/// arithmetic as detail::blur_strip, so the result matches the materialized
/// stack bit for bit.
class LineBufferCascade {
 public:
  LineBufferCascade(const ImagePlanar& input, std::size_t depth, BorderPolicy border,
                    std::size_t first_row)
      : in_(input),
        width_(input.width()),
        height_(input.height()),
        depth_(depth),
        border_(border),
        levels_(depth + 1),
        zeros_(input.width(), 0.0) {
    for (std::size_t level = 0; level <= depth_; ++level) {
      Level& lv = levels_[level];
      lv.slots = depth_ - level + 3;
      if (level > 0) lv.values.resize(lv.slots * 3 * width_);
      if (level < depth_) lv.hsum.resize(lv.slots * 3 * width_);
      lv.row_of_slot.assign(lv.slots, -1);
      const auto lag = static_cast<std::ptrdiff_t>(depth_ - level);
      lv.next = std::max<std::ptrdiff_t>(0, static_cast<std::ptrdiff_t>(first_row) - lag);
    }
  }

  /// Row y of channel k at blur level `level`; y must be in [0, height).
  const double* row(std::size_t level, std::size_t k, std::ptrdiff_t y) {
    if (level == 0) return in_.plane(k).data() + static_cast<std::size_t>(y) * width_;
    ensure(level, y);
    Level& lv = levels_[level];
    return lv.values.data() + (slot_of(lv, y) * 3 + k) * width_;
  }

 private:
  struct Level {
    std::size_t slots = 0;
    std::vector<double> values;  // slots x 3 x width, unused for level 0
    std::vector<double> hsum;    // slots x 3 x width, unused for the last level
    std::vector<std::ptrdiff_t> row_of_slot;
    std::ptrdiff_t next = 0;
  };

  std::size_t slot_of(const Level& lv, std::ptrdiff_t y) const {
    const std::size_t s = static_cast<std::size_t>(y) % lv.slots;
    if (lv.row_of_slot[s] != y) throw std::logic_error("line buffer ring underrun");
    return s;
  }

  void ensure(std::size_t level, std::ptrdiff_t y) {
    Level& lv = levels_[level];
    while (lv.next <= y) compute(level, lv.next++);
  }

  /// Horizontal sums of level `level` at row y, honoring the border policy
  /// for rows just outside the image.
  const double* hsum_row(std::size_t level, std::size_t k, std::ptrdiff_t y) {
    const auto last = static_cast<std::ptrdiff_t>(height_) - 1;
    if (y < 0 || y > last) {
      if (border_ == BorderPolicy::Zero) return zeros_.data();
      y = y < 0 ? 0 : last;
    }
    ensure(level, y);
    Level& lv = levels_[level];
    return lv.hsum.data() + (slot_of(lv, y) * 3 + k) * width_;
  }

  void compute(std::size_t level, std::ptrdiff_t y) {
    Level& lv = levels_[level];
    const std::size_t s = static_cast<std::size_t>(y) % lv.slots;
    lv.row_of_slot[s] = y;
    for (std::size_t k = 0; k < 3; ++k) {
      const double* values;
      if (level == 0) {
        values = in_.plane(k).data() + static_cast<std::size_t>(y) * width_;
      } else {
        const double* above = hsum_row(level - 1, k, y - 1);
        const double* mid = hsum_row(level - 1, k, y);
        const double* below = hsum_row(level - 1, k, y + 1);
        double* out = lv.values.data() + (s * 3 + k) * width_;
        for (std::size_t x = 0; x < width_; ++x) {
          out[x] = ((above[x] + mid[x]) + below[x]) * kNinth;
        }
        values = out;
      }
      if (level < depth_) {
        detail::horizontal_sum(values, lv.hsum.data() + (s * 3 + k) * width_, width_,
                               border_);
      }
    }
  }

  const ImagePlanar& in_;
  std::size_t width_;
  std::size_t height_;
  std::size_t depth_;
  BorderPolicy border_;
  std::vector<Level> levels_;
  std::vector<double> zeros_;
};

struct Term {
  std::size_t level;
  std::size_t channel;
  double weight;
};

}  // namespace

ImagePlanar preprocess(const ImagePlanar& img, const PreprocessConfig& cfg) {
  if (img.channels() != 3) {
    throw ShapeError("preprocess needs an RGB image, got " + std::to_string(img.channels()) +
                     " channels");
  }
  const FusedKernel kernel = build_fused_kernel(matrix_for(cfg.variant), cfg.depth);
  const std::size_t w = img.width();
  const std::size_t h = img.height();
  const std::size_t n = img.pixel_count();
  const std::size_t out_channels = kernel.out_channels();
  const bool expand = cfg.expand_to_three && out_channels == 1;

  std::vector<std::vector<Term>> terms(out_channels);
  for (std::size_t c = 0; c < out_channels; ++c) {
    for (std::size_t i = 0; i < kernel.inputs(); ++i) {
      const double wgt = kernel.weight(c, i);
      if (wgt != 0.0) terms[c].push_back({i / 3, i % 3, wgt});
    }
  }

  std::vector<double> out(n * (expand ? 3 : out_channels));
#pragma omp parallel
  {
    const auto threads = static_cast<std::size_t>(omp_get_num_threads());
    const auto tid = static_cast<std::size_t>(omp_get_thread_num());
    const std::size_t band = (h + threads - 1) / threads;
    const std::size_t y0 = std::min(h, tid * band);
    const std::size_t y1 = std::min(h, y0 + band);
    if (y0 < y1) {
      LineBufferCascade cascade(img, cfg.depth, cfg.border, y0);
      for (std::size_t y = y0; y < y1; ++y) {
        const auto row = static_cast<std::ptrdiff_t>(y);
        for (std::size_t c = 0; c < out_channels; ++c) {
          double* acc = out.data() + c * n + y * w;
          const auto& tc = terms[c];
          if (tc.empty()) {
            std::fill(acc, acc + w, 0.0);
            continue;
          }
          const double* x0 = cascade.row(tc[0].level, tc[0].channel, row);
          const double w0 = tc[0].weight;
          for (std::size_t x = 0; x < w; ++x) acc[x] = w0 * x0[x];
          for (std::size_t t = 1; t < tc.size(); ++t) {
            const double* xs = cascade.row(tc[t].level, tc[t].channel, row);
            const double wt = tc[t].weight;
            for (std::size_t x = 0; x < w; ++x) acc[x] += wt * xs[x];
          }
        }
        if (expand) {
          const double* src = out.data() + y * w;
          std::copy(src, src + w, out.data() + n + y * w);
          std::copy(src, src + w, out.data() + 2 * n + y * w);
        }
      }
    }
  }
  return ImagePlanar(w, h, expand ? 3 : out_channels, std::move(out), kernel.output_domain());
}

ImagePlanar preprocess_stacked(const ImagePlanar& img, const PreprocessConfig& cfg) {
  const FusedKernel kernel = build_fused_kernel(matrix_for(cfg.variant), cfg.depth);
  ImagePlanar result =
      extract_contrast_fused(build_blur_stack(img, cfg.depth, cfg.border), kernel);
  if (cfg.expand_to_three && result.channels() == 1) return expand_channels(result);
  return result;
}

// ---------------------------------------------------------------------------
// Manifests

DatasetManifest::DatasetManifest(std::vector<ManifestEntry> entries)
    : entries_(std::move(entries)) {
  std::set<std::string> seen;
  for (const auto& e : entries_) {
    const std::filesystem::path stem(e.stem);
    if (e.stem.empty() || stem.is_absolute()) {
      throw FormatError("manifest stem '" + e.stem + "' must be a non-empty relative path");
    }
    for (const auto& part : stem) {
      if (part == "..") throw FormatError("manifest stem '" + e.stem + "' escapes the output root");
    }
    if (!seen.insert(stem.lexically_normal().generic_string()).second) {
      throw FormatError("duplicate output stem '" + e.stem + "'");
    }
  }
}

DatasetManifest manifest_from_directory(const std::filesystem::path& dir) {
  std::vector<ManifestEntry> entries;
  for (const auto& it : std::filesystem::recursive_directory_iterator(dir)) {
    if (!it.is_regular_file() || !format_from_extension(it.path())) continue;
    const auto rel = std::filesystem::relative(it.path(), dir);
    auto stem = rel;
    stem.replace_extension();
    entries.push_back({it.path(), stem.generic_string()});
  }
  std::sort(entries.begin(), entries.end(),
            [](const ManifestEntry& a, const ManifestEntry& b) { return a.stem < b.stem; });
  return DatasetManifest(std::move(entries));
}

DatasetManifest parse_manifest(std::string_view text, const std::filesystem::path& base_dir) {
  std::vector<ManifestEntry> entries;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;

    std::string input(line);
    std::string stem;
    if (const auto tab = line.find('\t'); tab != std::string_view::npos) {
      input = std::string(line.substr(0, tab));
      stem = std::string(line.substr(tab + 1));
    }
    std::filesystem::path path(input);
    if (stem.empty()) stem = path.stem().string();
    if (path.is_relative()) path = base_dir / path;
    entries.push_back({path, stem});
  }
  return DatasetManifest(std::move(entries));
}

DatasetManifest load_manifest(const std::filesystem::path& path) {
  if (std::filesystem::is_directory(path)) return manifest_from_directory(path);
  const Bytes bytes = read_file(path);
  return parse_manifest(std::string_view(reinterpret_cast<const char*>(bytes.data()),
                                         bytes.size()),
                        path.parent_path());
}

// ---------------------------------------------------------------------------
// Batch processing

std::vector<std::filesystem::path> write_outputs(const ImagePlanar& result,
                                                 const std::filesystem::path& out_dir,
                                                 std::string_view stem, OutputFormat format) {
  std::vector<std::filesystem::path> written;
  const std::filesystem::path base = out_dir / std::filesystem::path(std::string(stem));
  auto with_ext = [&](const char* ext) {
    auto p = base;
    p += ext;
    return p;
  };
  const bool all = format == OutputFormat::All;
  if (all || format == OutputFormat::RawTensor) {
    written.push_back(with_ext(".rtf"));
    write_raw(result, written.back());
  }
  if (all || format == OutputFormat::PFM) {
    written.push_back(with_ext(".pfm"));
    write_file(written.back(), encode_pfm(result));
  }
  if (all || format == OutputFormat::VisualizationPNG) {
    written.push_back(with_ext(".png"));
    write_file(written.back(), result.domain() == ValueDomain::Signed
                                   ? encode_visualization(result)
                                   : encode_png8(result));
  }
  return written;
}

BatchReport process_dataset(const DatasetManifest& manifest, const PreprocessConfig& cfg,
                            std::size_t parallelism, const std::filesystem::path& out_dir) {
  const auto start = std::chrono::steady_clock::now();
  const auto& entries = manifest.entries();
  const std::size_t count = entries.size();

  // Directories are created up front so workers only write files.
  std::filesystem::create_directories(out_dir);
  for (const auto& e : entries) {
    std::filesystem::create_directories((out_dir / e.stem).parent_path());
  }

  std::vector<std::string> errors(count);
  std::vector<std::size_t> pixels(count, 0);
  const int jobs = static_cast<int>(std::max<std::size_t>(1, parallelism));
#pragma omp parallel for schedule(dynamic) num_threads(jobs)
  for (std::size_t i = 0; i < count; ++i) {
    try {
      const ImagePlanar img = load_image(entries[i].input);
      const ImagePlanar result = preprocess(img, cfg);
      write_outputs(result, out_dir, entries[i].stem, cfg.output);
      pixels[i] = img.pixel_count();
    } catch (const std::exception& e) {
      errors[i] = e.what();
      if (errors[i].empty()) errors[i] = "unknown error";
    }
  }

  BatchReport report;
  for (std::size_t i = 0; i < count; ++i) {
    if (errors[i].empty()) {
      report.succeeded.push_back(entries[i].stem);
      report.pixels += pixels[i];
    } else {
      report.failed.push_back({entries[i].input, errors[i]});
    }
  }
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::string format_report(const BatchReport& report) {
  std::ostringstream out;
  char buf[64];
  out << "entries=" << report.succeeded.size() + report.failed.size() << '\n'
      << "succeeded=" << report.succeeded.size() << '\n'
      << "failed=" << report.failed.size() << '\n';
  std::snprintf(buf, sizeof(buf), "%.6f", report.wall_seconds);
  out << "wall_seconds=" << buf << '\n';
  out << "pixels=" << report.pixels << '\n';
  std::snprintf(buf, sizeof(buf), "%.1f", report.pixels_per_second());
  out << "pixels_per_second=" << buf << '\n';
  for (const auto& f : report.failed) {
    out << "failure=" << f.input.string() << ": " << f.reason << '\n';
  }
  return out.str();
}

}  // namespace retina
