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

#include "retina/config.hpp"

#include <charconv>
#include <sstream>

#include "retina/error.hpp"

namespace retina {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(std::size_t line, std::string_view key, std::string_view value) {
  throw FormatError("config line " + std::to_string(line) + ": invalid " + std::string(key) +
                    " '" + std::string(value) + "'");
}

std::size_t parse_count(std::size_t line, std::string_view key, std::string_view value) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc{} || ptr != value.data() + value.size()) bad_value(line, key, value);
  return v;
}

}  // namespace

std::string_view output_name(OutputFormat format) {
  switch (format) {
    case OutputFormat::RawTensor:
      return "raw";
    case OutputFormat::PFM:
      return "pfm";
    case OutputFormat::VisualizationPNG:
      return "png-vis";
    case OutputFormat::All:
      return "all";
  }
  return "?";
}

std::optional<OutputFormat> parse_output(std::string_view name) {
  for (auto f : {OutputFormat::RawTensor, OutputFormat::PFM, OutputFormat::VisualizationPNG,
                 OutputFormat::All}) {
    if (output_name(f) == name) return f;
  }
  return std::nullopt;
}

std::size_t PreprocessConfig::sink_channels() const {
  const std::size_t c = variant.output_channels();
  return c == 1 && expand_to_three ? 3 : c;
}

std::string serialize_config(const PreprocessConfig& cfg) {
  std::ostringstream out;
  out << "variant = " << kind_name(cfg.variant.kind) << '\n'
      << "depth = " << cfg.depth << '\n'
      << "border = " << border_name(cfg.border) << '\n'
      << "output = " << output_name(cfg.output) << '\n'
      << "channels = " << cfg.variant.grayscale_channels << '\n'
      << "expand = " << (cfg.expand_to_three ? "true" : "false") << '\n';
  return out.str();
}

PreprocessConfig parse_config(std::string_view text, PreprocessConfig base,
                              std::vector<std::string>* seen) {
  PreprocessConfig cfg = base;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw FormatError("config line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (seen != nullptr) seen->emplace_back(key);

    if (key == "variant") {
      const auto kind = parse_kind(value);
      if (!kind) bad_value(line_no, key, value);
      cfg.variant.kind = *kind;
    } else if (key == "depth") {
      cfg.depth = parse_count(line_no, key, value);
    } else if (key == "border") {
      const auto border = parse_border(value);
      if (!border) bad_value(line_no, key, value);
      cfg.border = *border;
    } else if (key == "output") {
      const auto output = parse_output(value);
      if (!output) bad_value(line_no, key, value);
      cfg.output = *output;
    } else if (key == "channels") {
      const std::size_t c = parse_count(line_no, key, value);
      if (c != 1 && c != 3) bad_value(line_no, key, value);
      cfg.variant.grayscale_channels = c;
    } else if (key == "expand") {
      if (value == "true") {
        cfg.expand_to_three = true;
      } else if (value == "false") {
        cfg.expand_to_three = false;
      } else {
        bad_value(line_no, key, value);
      }
    } else {
      throw FormatError("config line " + std::to_string(line_no) + ": unknown key '" +
                        std::string(key) + "'");
    }
  }
  return cfg;
}

}  // namespace retina
