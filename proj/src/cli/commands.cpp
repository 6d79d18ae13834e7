// Copyright 2026 The odkit Authors
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

#include "odkit/cli/commands.hpp"

#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <sstream>

#include <fmt/format.h>

#include "odkit/common/hash.hpp"
#include "odkit/common/logging.hpp"
#include "odkit/dataset/annotations.hpp"
#include "odkit/embedkit/pipeline.hpp"
#include "odkit/promptkit/generate.hpp"

namespace odkit::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error(fmt::format("cannot write {}", path.string()));
  out << text;
  if (!out) throw std::runtime_error(fmt::format("write failed: {}", path.string()));
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw std::runtime_error(fmt::format("cannot create output directory {}", dir.string()));
}

std::vector<std::string> read_lines(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(fmt::format("cannot open {}", path.string()));
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (!line.empty() && line.front() != '#') lines.push_back(line);
  }
  return lines;
}

}  // namespace

int cmd_synth(const RunConfig& config) {
  try {
    config.validate_paths();
    if (config.domains.empty()) throw ConfigError("no domains configured");
    const auto presets = load_presets(config);
    const auto jobs = resolve_domains(config, presets);

    auto data = dataset::load_annotations(config.annotations);
    if (config.exclude_list) {
      data.annotations = dataset::exclude_images(data.annotations, dataset::read_id_list(*config.exclude_list));
    }

    dataset::AmplifyOptions options;
    options.image_root = config.image_root;
    options.out_dir = config.output_root;
    options.seed = config.seed;
    options.workers = std::max(1u, config.workers);
    options.per_domain_count =
        config.total_count ? dataset::equal_split(*config.total_count, jobs.size()) : config.per_domain_count;
    options.source_ref = config.annotations.generic_string();
    options.config_hash = config.hash();

    const auto manifest = dataset::amplify(data, jobs, options);
    for (const auto& d : manifest.domains) {
      std::cout << fmt::format("domain={} images={} gaps={}\n", d.tag, d.images.size(), d.gaps.size());
    }
    std::cout << fmt::format("total images={} gaps={} manifest={}\n", manifest.total_images(), manifest.total_gaps(),
                             (config.output_root / "manifest.json").string());
    return manifest.total_gaps() > 0 ? kExitPartial : kExitOk;
  } catch (const std::exception& e) {
    log().error("synth failed: {}", e.what());
    return kExitFatal;
  }
}

int cmd_eval(const EvalArgs& args) {
  try {
    args.config.validate();
    std::optional<dataset::DatasetManifest> manifest;
    fs::path annotations_path;
    if (args.manifest) {
      manifest = dataset::DatasetManifest::load(*args.manifest);
      annotations_path = args.annotations.value_or(args.manifest->parent_path() / manifest->benchmark_annotations);
    } else if (args.annotations) {
      annotations_path = *args.annotations;
    } else {
      throw eval::EvalError("either a manifest or an annotation file is required");
    }

    const auto data = dataset::load_annotations(annotations_path);
    const auto detections = eval::load_detections(args.predictions);
    const auto report = manifest ? eval::evaluate_per_domain(detections, *manifest, data.annotations, data.categories,
                                                             args.config)
                                 : eval::evaluate(detections, data.annotations, data.categories, args.config);

    std::string hash = args.config_hash;
    if (hash.empty()) {
      const json key = {{"predictions", args.predictions.generic_string()},
                        {"annotations", annotations_path.generic_string()},
                        {"manifest", args.manifest ? args.manifest->generic_string() : std::string()},
                        {"eval", eval_config_to_json(args.config)}};
      hash = hex64(fnv1a64(key.dump()));
    }
    auto doc = eval::report_to_json(report);
    doc["provenance"] = provenance(hash, args.seed);
    doc["eval_config"] = eval_config_to_json(args.config);

    ensure_dir(args.out_dir);
    const auto table = eval::report_to_table(report);
    write_text(args.out_dir / "report.json", doc.dump(2) + "\n");
    write_text(args.out_dir / "report.txt",
               fmt::format("config_hash={} seed={}\n{}", hash, args.seed, table));
    std::cout << table;
    return kExitOk;
  } catch (const std::exception& e) {
    log().error("eval failed: {}", e.what());
    return kExitFatal;
  }
}

namespace {

embedkit::TensorFile read_named(const fs::path& path, std::string_view role) {
  try {
    return embedkit::read_tensor_file(path);
  } catch (const std::exception& e) {
    throw std::runtime_error(fmt::format("{} file: {}", role, e.what()));
  }
}

const embedkit::Tensor& single_tensor(const embedkit::TensorFile& file, const fs::path& path) {
  if (file.tensors.size() != 1) {
    throw embedkit::ShapeError(fmt::format("{} must hold exactly one tensor, found {}", path.string(), file.tensors.size()));
  }
  return file.tensors.front().second;
}

}  // namespace

int cmd_fuse(const FuseArgs& args) {
  try {
    std::vector<embedkit::FeatureMap> layers;
    std::vector<std::string> layer_names;
    for (const auto& path : args.features) {
      const auto file = read_named(path, "feature");
      for (const auto& [name, tensor] : file.tensors) {
        if (tensor.dims.size() != 3) continue;
        try {
          layers.push_back(embedkit::FeatureMap::from_tensor(tensor));
        } catch (const std::exception& e) {
          throw embedkit::ShapeError(fmt::format("feature tensor '{}' in {}: {}", name, path.string(), e.what()));
        }
        layer_names.push_back(fmt::format("{}:{}", path.filename().string(), name));
      }
    }
    if (layers.empty()) throw embedkit::ShapeError("no rank-3 feature tensors found in the feature files");

    const auto cat_file = read_named(args.categories, "category");
    const auto& cat_tensor = single_tensor(cat_file, args.categories);
    if (cat_tensor.dims.size() != 2) {
      throw embedkit::ShapeError(fmt::format("category tensor '{}' must be [G, d]", cat_file.tensors.front().first));
    }
    const auto categories = embedkit::embeddings_from_tensor(cat_tensor, embedkit::EmbeddingRole::kCategory);

    const auto roi_file = read_named(args.roi, "roi");
    const auto& roi_tensor = single_tensor(roi_file, args.roi);
    const auto rois = embedkit::embeddings_from_tensor(roi_tensor, embedkit::EmbeddingRole::kRoi);
    if (rois.size() != 1) throw embedkit::ShapeError(fmt::format("roi tensor '{}' must hold one vector", roi_file.tensors.front().first));

    const auto params = embedkit::FusionParams::from_tensor_file(read_named(args.params, "params"));

    embedkit::PipelineOptions options;
    options.mode = args.train ? embedkit::PipelineMode::kTrain : embedkit::PipelineMode::kTest;
    if (args.train) options.perturbation = embedkit::PerturbationSpec{args.strength, args.seed};
    options.perturb_layers = args.perturb_layers;
    const auto result = embedkit::run_pipeline(layers, categories, params, rois.front(), options);

    const json key = {{"features", layer_names},
                      {"categories", args.categories.filename().string()},
                      {"params", args.params.filename().string()},
                      {"roi", args.roi.filename().string()},
                      {"mode", args.train ? "train" : "test"},
                      {"strength", args.train ? args.strength : 0.0},
                      {"perturb_layers", args.perturb_layers}};
    const auto prov = provenance(hex64(fnv1a64(key.dump())), args.seed);

    ensure_dir(args.out_dir);
    embedkit::TensorFile out;
    out.metadata = json{{"provenance", prov}}.dump();
    out.add("grafted", embedkit::embeddings_to_tensor(result.grafted));
    out.add("domain", embedkit::embeddings_to_tensor(std::span(&result.domain, 1)));
    embedkit::write_tensor_file(args.out_dir / "grafted.odkt", out);

    json report = {{"provenance", prov},
                   {"mode", args.train ? "train" : "test"},
                   {"layers", layer_names},
                   {"orthogonality_loss", result.orthogonality_loss},
                   {"contrastive_losses", result.contrastive_losses},
                   {"classification", {{"index", result.classification.index}, {"scores", result.classification.scores}}}};
    write_text(args.out_dir / "fuse_report.json", report.dump(2) + "\n");
    std::cout << fmt::format("class={} orthogonality_loss={:.6f}\n", result.classification.index,
                             result.orthogonality_loss);
    return kExitOk;
  } catch (const std::exception& e) {
    log().error("fuse failed: {}", e.what());
    return kExitFatal;
  }
}

int cmd_prompts(const PromptsArgs& args) {
  using namespace promptkit;
  try {
    const auto blocklist = args.blocklist ? ColorBlocklist::load(*args.blocklist) : ColorBlocklist::builtin();
    std::ostringstream text;
    int code = kExitOk;

    if (args.action == "render") {
      for (const auto& d : load_descriptors(args.input)) text << render_prompt(d) << '\n';
    } else if (args.action == "validate") {
      const auto descriptors = load_descriptors(args.input);
      json reports = json::array();
      for (const auto& r : validate_all(descriptors, blocklist)) {
        if (!r.passed()) code = kExitValidation;
        reports.push_back(report_to_json(r));
      }
      text << json{{"reports", reports}, {"passed", code == kExitOk}}.dump(2) << '\n';
    } else if (args.action == "generate") {
      const auto categories = read_lines(args.input);
      std::string instruction(kDefaultInstruction);
      if (args.instruction) {
        std::ifstream in(*args.instruction);
        if (!in) throw std::runtime_error(fmt::format("cannot open {}", args.instruction->string()));
        instruction.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
      }
      std::unique_ptr<DescriptorBackend> backend;
      if (args.fixtures) {
        backend = std::make_unique<OfflineBackend>(OfflineBackend::load(*args.fixtures));
      } else if (args.backend_config) {
        backend = std::make_unique<RemoteBackend>(RemoteConfig::load(*args.backend_config));
      } else {
        throw std::runtime_error("generate needs --fixtures or --backend-config");
      }
      const auto results = generate_descriptors(categories, instruction, *backend, blocklist);
      for (const auto& r : results) {
        if (!r.error.empty()) {
          code = kExitPartial;
        } else if (!r.ok() && code == kExitOk) {
          code = kExitValidation;
        }
      }
      text << generation_to_json(results).dump(2) << '\n';
    } else {
      throw std::runtime_error(fmt::format("unknown prompts action '{}'", args.action));
    }

    if (args.out) {
      write_text(*args.out, text.str());
    } else {
      std::cout << text.str();
    }
    return code;
  } catch (const std::exception& e) {
    log().error("prompts {} failed: {}", args.action, e.what());
    return kExitFatal;
  }
}

}  // namespace odkit::cli
