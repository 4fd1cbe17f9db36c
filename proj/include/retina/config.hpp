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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "retina/blur.hpp"
#include "retina/reparam.hpp"

namespace retina {

enum class OutputFormat { RawTensor, PFM, VisualizationPNG, All };

std::string_view output_name(OutputFormat format);
std::optional<OutputFormat> parse_output(std::string_view name);

/// Default blur depth.
inline constexpr std::size_t kDefaultDepth = 5;

struct PreprocessConfig {
  ReparamVariant variant{ReparamKind::SingleColor, 3};
  std::size_t depth = kDefaultDepth;
  BorderPolicy border = BorderPolicy::Replicate;
  OutputFormat output = OutputFormat::RawTensor;
  /// Duplicate a single grayscale channel into three identical planes before
  /// writing. No effect on variants that already produce three channels.
  bool expand_to_three = false;

  /// Channel count written to the sinks.
  std::size_t sink_channels() const;

  friend bool operator==(const PreprocessConfig&, const PreprocessConfig&) = default;
};

/// Flat `key = value` text with keys variant, depth, border, output,
/// channels and expand. '#' starts a comment; blank lines are ignored.
std::string serialize_config(const PreprocessConfig& cfg);

/// Parses the text form, starting from `base` so that a file may set only
/// some keys. Unknown keys and bad values raise FormatError. Keys that were
/// present are appended to `seen` when given.
PreprocessConfig parse_config(std::string_view text, PreprocessConfig base = {},
                              std::vector<std::string>* seen = nullptr);

}  // namespace retina
