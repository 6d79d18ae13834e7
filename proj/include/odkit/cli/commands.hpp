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

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "odkit/cli/config.hpp"

namespace odkit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFatal = 1;
inline constexpr int kExitPartial = 2;
inline constexpr int kExitValidation = 3;

/// Amplifies every configured domain. 0 on success, 2 when the manifest
/// records gaps, 1 on fatal errors.
int cmd_synth(const RunConfig& config);

struct EvalArgs {
  std::filesystem::path predictions;
  std::optional<std::filesystem::path> manifest;
  /// Defaults to the manifest's combined benchmark file.
  std::optional<std::filesystem::path> annotations;
  std::filesystem::path out_dir = ".";
  eval::EvalConfig config;
  std::string config_hash;  // empty: hash of the arguments
  std::uint64_t seed = 0;
};

/// Writes report.json and report.txt into out_dir. 0 whenever evaluation
/// completes, 1 on unreadable or malformed inputs.
int cmd_eval(const EvalArgs& args);

struct FuseArgs {
  /// One or more tensor files; every rank-3 tensor is a layer feature map,
  /// taken in file then manifest order.
  std::vector<std::filesystem::path> features;
  std::filesystem::path categories;  // [G, d] tensor
  std::filesystem::path params;
  std::filesystem::path roi;  // [d] or [1, d] tensor
  std::filesystem::path out_dir = ".";
  bool train = false;
  std::uint64_t seed = 0;
  double strength = 0.0;
  std::vector<bool> perturb_layers;
};

/// Writes grafted.odkt and fuse_report.json into out_dir. 1 on shape or
/// format errors.
int cmd_fuse(const FuseArgs& args);

struct PromptsArgs {
  std::string action;  // render | validate | generate
  std::filesystem::path input;  // descriptor file, or category list for generate
  std::optional<std::filesystem::path> blocklist;
  std::optional<std::filesystem::path> fixtures;        // offline backend
  std::optional<std::filesystem::path> backend_config;  // remote backend
  std::optional<std::filesystem::path> instruction;     // template file
  std::optional<std::filesystem::path> out;
};

/// render prints one prompt per line; validate exits 3 when any descriptor
/// fails; generate exits 2 on per-category errors and 3 on validation
/// failures.
int cmd_prompts(const PromptsArgs& args);

}  // namespace odkit::cli
