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

// retina-prep command line. Subcommands: process, kernel, eval.
//
// Exit codes: 0 success, 1 at least one entry failed, 2 usage error.

#include <omp.h>

#include <CLI11.hpp>
#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "retina/config.hpp"
#include "retina/contrast.hpp"
#include "retina/error.hpp"
#include "retina/image_io.hpp"
#include "retina/pipeline.hpp"
#include "retina/reparam.hpp"
#include "retina/seg_metrics.hpp"

namespace fs = std::filesystem;
using namespace retina;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

const char* kVariantHelp =
    "color reparameterization: grayscale, grayscale-green-bias, color-opponency, single-color";

const char* kOutputHelp =
    "raw (.rtf float32 tensor), pfm (.pfm), png-vis (.png) or all. png-vis renders signed "
    "contrast as round((0.5 - 0.5 v) * 255): 0 -> 128, -1 -> 255 (white), +1 -> 0; "
    "unsigned outputs (depth 0) are written as plain 8-bit PNG.";

struct ProcessArgs {
  std::optional<std::string> variant;
  std::optional<std::size_t> depth;
  std::optional<std::string> border;
  std::optional<std::string> output;
  std::optional<std::size_t> channels;
  bool expand = false;
  std::string config_file;
  std::string input;
  std::string out;
  std::size_t jobs = 0;
};

struct KernelArgs {
  std::string variant;
  std::size_t depth = kDefaultDepth;
  std::size_t channels = 3;
};

struct EvalArgs {
  std::string pred;
  std::string gt;
  std::size_t classes = 0;
  std::uint32_t ignore = kDefaultIgnoreId;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

PreprocessConfig resolve_config(const ProcessArgs& a) {
  PreprocessConfig cfg;
  bool have_variant = false;
  if (!a.config_file.empty()) {
    const Bytes text = read_file(a.config_file);
    const std::string_view view(reinterpret_cast<const char*>(text.data()), text.size());
    std::vector<std::string> keys;
    cfg = parse_config(view, {}, &keys);
    have_variant = std::find(keys.begin(), keys.end(), "variant") != keys.end();
  }
  if (a.variant) {
    const auto kind = parse_kind(*a.variant);
    if (!kind) throw UsageError("unknown variant '" + *a.variant + "'");
    cfg.variant.kind = *kind;
    have_variant = true;
  }
  if (!have_variant) throw UsageError("--variant is required (or a config file setting it)");
  if (a.depth) cfg.depth = *a.depth;
  if (a.border) {
    const auto border = parse_border(*a.border);
    if (!border) throw UsageError("unknown border '" + *a.border + "'");
    cfg.border = *border;
  }
  if (a.output) {
    const auto output = parse_output(*a.output);
    if (!output) throw UsageError("unknown output '" + *a.output + "'");
    cfg.output = *output;
  }
  if (a.channels) cfg.variant.grayscale_channels = *a.channels;
  if (a.expand) cfg.expand_to_three = true;
  return cfg;
}

int run_process(const ProcessArgs& a) {
  PreprocessConfig cfg;
  try {
    cfg = resolve_config(a);
  } catch (const UsageError& e) {
    std::cerr << "retina-prep process: " << e.what() << '\n';
    return kExitUsage;
  } catch (const retina::Error& e) {
    std::cerr << "retina-prep process: " << e.what() << '\n';
    return kExitUsage;
  }

  DatasetManifest manifest;
  try {
    manifest = load_manifest(a.input);
  } catch (const std::exception& e) {
    std::cerr << "retina-prep process: cannot read input: " << e.what() << '\n';
    return kExitUsage;
  }

  const std::size_t jobs =
      a.jobs > 0 ? a.jobs : static_cast<std::size_t>(omp_get_max_threads());
  const BatchReport report = process_dataset(manifest, cfg, jobs, a.out);
  std::cout << format_report(report);
  return report.ok() ? kExitOk : kExitFailure;
}

int run_kernel(const KernelArgs& a) {
  const auto kind = parse_kind(a.variant);
  if (!kind) {
    std::cerr << "retina-prep kernel: unknown variant '" << a.variant << "'\n";
    return kExitUsage;
  }
  const ReparamVariant variant{*kind, a.channels};
  const FusedKernel k = build_fused_kernel(matrix_for(variant), a.depth);
  std::printf("# variant=%s depth=%zu rows=%zu inputs=%zu\n",
              std::string(kind_name(*kind)).c_str(), k.depth(), k.out_channels(), k.inputs());
  for (std::size_t c = 0; c < k.out_channels(); ++c) {
    for (std::size_t i = 0; i < k.inputs(); ++i) {
      std::printf(i == 0 ? "%.17g" : " %.17g", k.weight(c, i));
    }
    std::printf("\n");
  }
  return kExitOk;
}

LabelMap load_labels(const fs::path& path, std::uint32_t ignore) {
  const LabelImage img = decode_label_png(read_file(path));
  LabelMap map;
  map.width = img.width;
  map.height = img.height;
  map.labels.assign(img.labels.begin(), img.labels.end());
  map.ignore_id = ignore;
  return map;
}

int run_eval(const EvalArgs& a) {
  if (!fs::is_directory(a.pred) || !fs::is_directory(a.gt)) {
    std::cerr << "retina-prep eval: --pred and --gt must be directories\n";
    return kExitUsage;
  }
  std::vector<fs::path> gt_files;
  for (const auto& it : fs::recursive_directory_iterator(a.gt)) {
    if (it.is_regular_file() && format_from_extension(it.path()) == ImageFormat::PNG) {
      gt_files.push_back(fs::relative(it.path(), a.gt));
    }
  }
  std::sort(gt_files.begin(), gt_files.end());

  ConfusionMatrix cm(a.classes);
  std::size_t failures = 0;
  for (const auto& rel : gt_files) {
    try {
      const fs::path pred_path = fs::path(a.pred) / rel;
      if (!fs::exists(pred_path)) throw retina::Error("missing prediction " + pred_path.string());
      accumulate(cm, load_labels(pred_path, a.ignore), load_labels(fs::path(a.gt) / rel, a.ignore));
    } catch (const std::exception& e) {
      std::cerr << "retina-prep eval: " << rel.string() << ": " << e.what() << '\n';
      ++failures;
    }
  }
  try {
    std::cout << "images=" << gt_files.size() - failures << '\n'
              << format_metrics(finalize(cm), cm.total());
  } catch (const EmptyEvaluationError& e) {
    std::cerr << "retina-prep eval: " << e.what() << '\n';
    return kExitFailure;
  }
  return failures == 0 ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Retina-inspired contrast preprocessing and segmentation metrics"};
  app.require_subcommand(1);

  ProcessArgs process;
  auto* p = app.add_subcommand("process", "preprocess a directory or manifest of images");
  p->add_option("--variant", process.variant, kVariantHelp);
  p->add_option("--depth", process.depth,
                "number of 3x3 box blurs (default 5; no upper bound, the useful range "
                "depends on the downstream network)");
  p->add_option("--border", process.border, "replicate (default) or zero");
  p->add_option("--output", process.output, kOutputHelp);
  p->add_option("--channels", process.channels, "grayscale output channels, 1 or 3")
      ->check(CLI::IsMember({1, 3}));
  p->add_flag("--expand", process.expand,
              "duplicate a single grayscale channel into three identical channels");
  p->add_option("--config", process.config_file,
                "key = value file (variant, depth, border, output, channels, expand); "
                "flags override it")
      ->check(CLI::ExistingFile);
  p->add_option("--input", process.input, "image directory or manifest file")->required();
  p->add_option("--out", process.out, "output directory")->required();
  p->add_option("--jobs", process.jobs, "images processed concurrently (default: all cores)");

  KernelArgs kernel;
  auto* k = app.add_subcommand("kernel", "print the fused pointwise weights");
  k->add_option("--variant", kernel.variant, kVariantHelp)->required();
  k->add_option("--depth", kernel.depth, "number of box blurs (default 5)");
  k->add_option("--channels", kernel.channels, "grayscale output channels, 1 or 3")
      ->check(CLI::IsMember({1, 3}));

  EvalArgs eval;
  auto* e = app.add_subcommand("eval", "mIoU / mAcc / aAcc over 8-bit label PNGs");
  e->add_option("--pred", eval.pred, "prediction directory")->required();
  e->add_option("--gt", eval.gt, "ground-truth directory")->required();
  e->add_option("--classes", eval.classes, "number of classes")
      ->required()
      ->check(CLI::Range(1, 256));
  e->add_option("--ignore", eval.ignore, "ignored ground-truth label (default 255)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (p->parsed()) return run_process(process);
    if (k->parsed()) return run_kernel(kernel);
    if (e->parsed()) return run_eval(eval);
  } catch (const std::exception& ex) {
    std::cerr << "retina-prep: " << ex.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}
