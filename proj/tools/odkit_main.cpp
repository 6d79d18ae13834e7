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

#include <iostream>

#include <CLI11.hpp>

#include "odkit/cli/commands.hpp"
#include "odkit/common/logging.hpp"

namespace {

using odkit::cli::kExitFatal;

struct Flags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> workers;
  std::optional<std::string> out;
  std::optional<std::string> preset;
  std::optional<bool> federated;
  bool quiet = false;
};

void add_common(CLI::App* app, Flags& f) {
  app->add_flag("--quiet", f.quiet, "Suppress log output");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"odkit: domain amplification, evaluation, embedding fusion and prompt tooling"};
  app.set_version_flag("--version", ODKIT_VERSION);
  app.require_subcommand(1);
  Flags f;

  auto* synth = app.add_subcommand("synth", "Amplify a dataset into degraded domains");
  synth->add_option("--config", f.config, "Run config (JSON)")->required()->check(CLI::ExistingFile);
  synth->add_option("--seed", f.seed, "Global seed");
  synth->add_option("--workers", f.workers, "Worker threads")->check(CLI::PositiveNumber);
  synth->add_option("--out", f.out, "Output directory");
  synth->add_option("--preset", f.preset, "Run a single preset domain");
  add_common(synth, f);

  odkit::cli::EvalArgs eval_args;
  std::string eval_predictions, eval_manifest, eval_annotations, eval_out = ".";
  auto* eval = app.add_subcommand("eval", "Evaluate detections (pooled and per domain)");
  eval->add_option("--predictions", eval_predictions, "Detections JSON")->required();
  eval->add_option("--manifest", eval_manifest, "Dataset manifest");
  eval->add_option("--annotations", eval_annotations, "Ground-truth annotations (default: manifest benchmark file)");
  eval->add_option("--config", f.config, "Run config supplying eval settings, seed and hash");
  eval->add_option("--out", eval_out, "Report directory");
  eval->add_option("--federated", f.federated, "Federated (LVIS) protocol: true/false");
  eval->add_option("--seed", f.seed, "Seed recorded in the report");
  add_common(eval, f);

  odkit::cli::FuseArgs fuse_args;
  std::vector<std::string> fuse_features;
  std::string fuse_categories, fuse_params, fuse_roi, fuse_mode = "test", fuse_out = ".";
  std::vector<int> fuse_mask;
  auto* fuse = app.add_subcommand("fuse", "Graft domain information onto category embeddings");
  fuse->add_option("--features", fuse_features, "Feature tensor files")->required();
  fuse->add_option("--categories", fuse_categories, "Category embedding tensor file")->required();
  fuse->add_option("--params", fuse_params, "Fusion parameter file")->required();
  fuse->add_option("--roi", fuse_roi, "RoI feature tensor file")->required();
  fuse->add_option("--mode", fuse_mode, "train or test")->check(CLI::IsMember({"train", "test"}));
  fuse->add_option("--seed", fuse_args.seed, "Perturbation seed");
  fuse->add_option("--strength", fuse_args.strength, "Perturbation strength (train mode)")->check(CLI::NonNegativeNumber);
  fuse->add_option("--perturb-layers", fuse_mask, "Per-layer perturbation mask, e.g. 1 1 0 0");
  fuse->add_option("--out", fuse_out, "Output directory");
  add_common(fuse, f);

  odkit::cli::PromptsArgs prompt_args;
  std::string prompt_input, prompt_blocklist, prompt_fixtures, prompt_backend, prompt_instruction, prompt_out;
  auto* prompts = app.add_subcommand("prompts", "Render, validate or generate category descriptors");
  prompts->add_option("action", prompt_args.action, "render | validate | generate")
      ->required()
      ->check(CLI::IsMember({"render", "validate", "generate"}));
  prompts->add_option("input", prompt_input, "Descriptor file (render/validate) or category list (generate)")
      ->required()
      ->check(CLI::ExistingFile);
  prompts->add_option("--blocklist", prompt_blocklist, "Color blocklist file");
  prompts->add_option("--fixtures", prompt_fixtures, "Offline descriptor fixtures");
  prompts->add_option("--backend-config", prompt_backend, "Remote LLM backend config");
  prompts->add_option("--instruction", prompt_instruction, "Instruction template file");
  prompts->add_option("--out", prompt_out, "Write output here instead of stdout");
  add_common(prompts, f);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitFatal;
  }

  if (f.quiet) odkit::set_log_level("quiet");
  auto opt_path = [](const std::string& s) -> std::optional<std::filesystem::path> {
    if (s.empty()) return std::nullopt;
    return std::filesystem::path(s);
  };

  try {
    if (synth->parsed()) {
      auto config = odkit::cli::RunConfig::load(f.config);
      odkit::cli::Overrides o;
      o.seed = f.seed;
      o.workers = f.workers;
      if (f.out) o.out = std::filesystem::path(*f.out);
      o.preset = f.preset;
      o.quiet = f.quiet;
      odkit::cli::apply_overrides(config, o);
      odkit::set_log_level(config.log_level);
      return odkit::cli::cmd_synth(config);
    }
    if (eval->parsed()) {
      if (!f.config.empty()) {
        auto config = odkit::cli::RunConfig::load(f.config);
        eval_args.config = config.eval;
        eval_args.config_hash = config.hash();
        eval_args.seed = config.seed;
        if (!f.quiet) odkit::set_log_level(config.log_level);
      }
      if (f.federated) eval_args.config.federated = *f.federated;
      if (f.seed) eval_args.seed = *f.seed;
      eval_args.predictions = eval_predictions;
      eval_args.manifest = opt_path(eval_manifest);
      eval_args.annotations = opt_path(eval_annotations);
      eval_args.out_dir = eval_out;
      return odkit::cli::cmd_eval(eval_args);
    }
    if (fuse->parsed()) {
      fuse_args.features.assign(fuse_features.begin(), fuse_features.end());
      fuse_args.categories = fuse_categories;
      fuse_args.params = fuse_params;
      fuse_args.roi = fuse_roi;
      fuse_args.train = fuse_mode == "train";
      fuse_args.out_dir = fuse_out;
      for (int m : fuse_mask) fuse_args.perturb_layers.push_back(m != 0);
      return odkit::cli::cmd_fuse(fuse_args);
    }
    prompt_args.input = prompt_input;
    prompt_args.blocklist = opt_path(prompt_blocklist);
    prompt_args.fixtures = opt_path(prompt_fixtures);
    prompt_args.backend_config = opt_path(prompt_backend);
    prompt_args.instruction = opt_path(prompt_instruction);
    prompt_args.out = opt_path(prompt_out);
    return odkit::cli::cmd_prompts(prompt_args);
  } catch (const std::exception& e) {
    odkit::log().error("{}", e.what());
    return kExitFatal;
  }
}
