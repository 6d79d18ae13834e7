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
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "odkit/dataset/amplify.hpp"
#include "odkit/eval/evaluate.hpp"
#include "odkit/imaging/spec.hpp"

namespace odkit::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A domain is given by exactly one of: a preset name, an inline
/// kind + params pair, or an external image directory.
struct DomainConfig {
  std::string tag;
  std::optional<std::string> preset;
  std::optional<imaging::DegradationSpec> spec;
  std::optional<std::filesystem::path> external_dir;
  std::optional<std::size_t> count;
};

struct RunConfig {
  std::uint64_t seed = 0;
  unsigned workers = 1;
  std::string log_level = "info";

  std::filesystem::path annotations;
  std::filesystem::path image_root;
  std::filesystem::path output_root;
  std::optional<std::filesystem::path> exclude_list;
  std::optional<std::filesystem::path> presets_file;

  std::size_t per_domain_count = 0;
  std::optional<std::size_t> total_count;
  std::vector<DomainConfig> domains;
  eval::EvalConfig eval;

  /// Relative paths resolve against `base_dir`. Unknown keys are rejected.
  static RunConfig from_json(const nlohmann::json& doc, const std::filesystem::path& base_dir);
  static RunConfig load(const std::filesystem::path& path);

  /// Everything that can influence outputs (worker count and log level
  /// excluded), in canonical key order.
  nlohmann::json to_json() const;
  /// Hex FNV-1a of the canonical to_json() dump.
  std::string hash() const;

  /// Throws ConfigError naming the first missing input path.
  void validate_paths() const;
};

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> workers;
  std::optional<std::filesystem::path> out;
  std::optional<std::string> preset;
  std::optional<bool> federated;
  bool quiet = false;
};

/// Command-line flags win over file values. A preset override replaces the
/// domain list with that single preset.
void apply_overrides(RunConfig& config, const Overrides& overrides);

imaging::PresetRegistry load_presets(const RunConfig& config);

/// Turns domain configs into amplification jobs, resolving presets.
std::vector<dataset::DomainJob> resolve_domains(const RunConfig& config, const imaging::PresetRegistry& presets);

/// {"config_hash", "seed", "tool_version"}.
nlohmann::json provenance(const std::string& config_hash, std::uint64_t seed);

eval::EvalConfig eval_config_from_json(const nlohmann::json& doc);
nlohmann::json eval_config_to_json(const eval::EvalConfig& config);

}  // namespace odkit::cli
