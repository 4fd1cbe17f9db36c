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
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "retina/config.hpp"
#include "retina/image.hpp"

namespace retina {

/// Reparameterization + difference-of-box-blurs for one RGB image:
///
///   extract_contrast_fused(build_blur_stack(img, d, border),
///                          build_fused_kernel(matrix_for(variant), d))
///
/// followed by expand_channels when configured. The computation is streamed
/// through per-strip line buffers instead of materializing the blur stack,
/// and the result is bit-identical to the expression above.
ImagePlanar preprocess(const ImagePlanar& img, const PreprocessConfig& cfg);

/// The unstreamed form, kept for comparison against preprocess().
ImagePlanar preprocess_stacked(const ImagePlanar& img, const PreprocessConfig& cfg);

struct ManifestEntry {
  std::filesystem::path input;
  /// Output path relative to the output root, without extension.
  std::string stem;
};

class DatasetManifest {
 public:
  DatasetManifest() = default;
  /// Throws FormatError on duplicate, absolute or parent-escaping stems.
  explicit DatasetManifest(std::vector<ManifestEntry> entries);

  const std::vector<ManifestEntry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

 private:
  std::vector<ManifestEntry> entries_;
};

/// Every .png/.ppm/.pgm/.pnm/.pfm file below `dir`, sorted by relative path;
/// the stem is the relative path without its extension.
DatasetManifest manifest_from_directory(const std::filesystem::path& dir);

/// One entry per line: `<input path>` or `<input path>\t<stem>`. Relative
/// inputs resolve against `base_dir`. '#' lines are comments.
DatasetManifest parse_manifest(std::string_view text, const std::filesystem::path& base_dir);

/// A directory becomes manifest_from_directory, a file is parsed as a manifest.
DatasetManifest load_manifest(const std::filesystem::path& path);

struct BatchFailure {
  std::filesystem::path input;
  std::string reason;
};

struct BatchReport {
  std::vector<std::string> succeeded;  // stems, manifest order
  std::vector<BatchFailure> failed;    // manifest order
  double wall_seconds = 0.0;
  std::size_t pixels = 0;  // over successful entries

  double pixels_per_second() const {
    return wall_seconds > 0.0 ? static_cast<double>(pixels) / wall_seconds : 0.0;
  }
  bool ok() const noexcept { return failed.empty(); }
};

/// Output files written for one processed image under `out_dir`; returns
/// their paths.
std::vector<std::filesystem::path> write_outputs(const ImagePlanar& result,
                                                 const std::filesystem::path& out_dir,
                                                 std::string_view stem, OutputFormat format);

/// Preprocesses every entry into `out_dir`, `parallelism` images at a time.
/// Entries that cannot be read, decoded or processed are recorded as
/// failures and the batch continues. Output bytes do not depend on
/// `parallelism`.
BatchReport process_dataset(const DatasetManifest& manifest, const PreprocessConfig& cfg,
                            std::size_t parallelism, const std::filesystem::path& out_dir);

/// key=value text form of a report.
std::string format_report(const BatchReport& report);

}  // namespace retina
