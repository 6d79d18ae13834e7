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

#include "odkit/cli/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include <fmt/format.h>

#include "odkit/common/hash.hpp"

#ifndef ODKIT_VERSION
#define ODKIT_VERSION "0.0.0"
#endif

namespace odkit::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void reject_unknown(const json& obj, std::initializer_list<std::string_view> known, std::string_view where) {
  for (const auto& [key, value] : obj.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ConfigError(fmt::format("unknown key '{}' in {}", key, where));
    }
  }
}

fs::path resolve(const fs::path& base, const std::string& text) {
  const fs::path p(text);
  return p.is_absolute() ? p : (base / p).lexically_normal();
}

template <typename T>
T get(const json& obj, const char* key, std::string_view where) {
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(fmt::format("{}.{} is missing or has the wrong type", where, key));
  }
}

}  // namespace

eval::EvalConfig eval_config_from_json(const json& doc) {
  if (!doc.is_object()) throw ConfigError("eval must be an object");
  reject_unknown(doc, {"iou_thresholds", "max_detections", "federated"}, "eval");
  eval::EvalConfig c;
  if (doc.contains("iou_thresholds")) c.iou_thresholds = get<std::vector<double>>(doc, "iou_thresholds", "eval");
  if (doc.contains("max_detections")) c.max_detections = get<std::size_t>(doc, "max_detections", "eval");
  if (doc.contains("federated")) c.federated = get<bool>(doc, "federated", "eval");
  try {
    c.validate();
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  return c;
}

json eval_config_to_json(const eval::EvalConfig& config) {
  return {{"iou_thresholds", config.iou_thresholds},
          {"max_detections", config.max_detections},
          {"federated", config.federated}};
}

RunConfig RunConfig::from_json(const json& doc, const fs::path& base_dir) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  reject_unknown(doc, {"seed", "workers", "log_level", "paths", "per_domain_count", "total_count", "domains", "eval"},
                 "config");
  RunConfig c;
  if (doc.contains("seed")) c.seed = get<std::uint64_t>(doc, "seed", "config");
  if (doc.contains("workers")) c.workers = get<unsigned>(doc, "workers", "config");
  if (doc.contains("log_level")) c.log_level = get<std::string>(doc, "log_level", "config");
  if (doc.contains("per_domain_count")) c.per_domain_count = get<std::size_t>(doc, "per_domain_count", "config");
  if (doc.contains("total_count")) c.total_count = get<std::size_t>(doc, "total_count", "config");

  if (!doc.contains("paths") || !doc["paths"].is_object()) throw ConfigError("config.paths object is required");
  const auto& paths = doc["paths"];
  reject_unknown(paths, {"annotations", "image_root", "output_root", "exclude_list", "presets"}, "paths");
  c.annotations = resolve(base_dir, get<std::string>(paths, "annotations", "paths"));
  c.image_root = resolve(base_dir, get<std::string>(paths, "image_root", "paths"));
  c.output_root = resolve(base_dir, get<std::string>(paths, "output_root", "paths"));
  if (paths.contains("exclude_list")) c.exclude_list = resolve(base_dir, get<std::string>(paths, "exclude_list", "paths"));
  if (paths.contains("presets")) c.presets_file = resolve(base_dir, get<std::string>(paths, "presets", "paths"));

  if (doc.contains("domains")) {
    if (!doc["domains"].is_array()) throw ConfigError("config.domains must be an array");
    for (const auto& entry : doc["domains"]) {
      if (!entry.is_object()) throw ConfigError("each domain must be an object");
      reject_unknown(entry, {"tag", "preset", "kind", "params", "external_dir", "count"}, "domain");
      DomainConfig d;
      d.tag = get<std::string>(entry, "tag", "domain");
      const auto where = fmt::format("domain '{}'", d.tag);
      if (entry.contains("count")) d.count = get<std::size_t>(entry, "count", where);
      const int sources = int(entry.contains("preset")) + int(entry.contains("kind")) + int(entry.contains("external_dir"));
      if (sources != 1) throw ConfigError(fmt::format("{} needs exactly one of preset, kind or external_dir", where));
      if (entry.contains("params") && !entry.contains("kind")) {
        throw ConfigError(fmt::format("{} has params without a kind", where));
      }
      if (entry.contains("preset")) d.preset = get<std::string>(entry, "preset", where);
      if (entry.contains("external_dir")) d.external_dir = resolve(base_dir, get<std::string>(entry, "external_dir", where));
      if (entry.contains("kind")) {
        try {
          json spec = {{"kind", entry["kind"]}, {"params", entry.value("params", json::object())}};
          d.spec = imaging::DegradationSpec::from_json(spec);
          d.spec->validate();
        } catch (const std::exception& e) {
          throw ConfigError(fmt::format("{}: {}", where, e.what()));
        }
      }
      c.domains.push_back(std::move(d));
    }
  }
  if (doc.contains("eval")) c.eval = eval_config_from_json(doc["eval"]);
  return c;
}

RunConfig RunConfig::load(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open config {}", path.string()));
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(fmt::format("{}: {}", path.string(), e.what()));
  }
  return from_json(doc, fs::absolute(path).parent_path());
}

json RunConfig::to_json() const {
  json paths = {{"annotations", annotations.generic_string()},
                {"image_root", image_root.generic_string()},
                {"output_root", output_root.generic_string()}};
  if (exclude_list) paths["exclude_list"] = exclude_list->generic_string();
  if (presets_file) paths["presets"] = presets_file->generic_string();
  json domain_list = json::array();
  for (const auto& d : domains) {
    json entry = {{"tag", d.tag}};
    if (d.preset) entry["preset"] = *d.preset;
    if (d.spec) entry["spec"] = d.spec->to_json();
    if (d.external_dir) entry["external_dir"] = d.external_dir->generic_string();
    if (d.count) entry["count"] = *d.count;
    domain_list.push_back(std::move(entry));
  }
  json doc = {{"seed", seed},
              {"paths", std::move(paths)},
              {"per_domain_count", per_domain_count},
              {"domains", std::move(domain_list)},
              {"eval", eval_config_to_json(eval)}};
  if (total_count) doc["total_count"] = *total_count;
  return doc;
}

std::string RunConfig::hash() const { return hex64(fnv1a64(to_json().dump())); }

void RunConfig::validate_paths() const {
  if (!fs::is_regular_file(annotations)) throw ConfigError(fmt::format("annotations file not found: {}", annotations.string()));
  if (!fs::is_directory(image_root)) throw ConfigError(fmt::format("image root is not a directory: {}", image_root.string()));
  if (exclude_list && !fs::is_regular_file(*exclude_list)) {
    throw ConfigError(fmt::format("exclude list not found: {}", exclude_list->string()));
  }
  if (presets_file && !fs::is_regular_file(*presets_file)) {
    throw ConfigError(fmt::format("presets file not found: {}", presets_file->string()));
  }
  for (const auto& d : domains) {
    if (d.external_dir && !fs::is_directory(*d.external_dir)) {
      throw ConfigError(fmt::format("domain '{}' external_dir is not a directory: {}", d.tag, d.external_dir->string()));
    }
  }
  if (output_root.empty()) throw ConfigError("output_root is empty");
}

void apply_overrides(RunConfig& config, const Overrides& overrides) {
  if (overrides.seed) config.seed = *overrides.seed;
  if (overrides.workers) config.workers = *overrides.workers;
  if (overrides.out) config.output_root = *overrides.out;
  if (overrides.federated) config.eval.federated = *overrides.federated;
  if (overrides.quiet) config.log_level = "quiet";
  if (overrides.preset) {
    DomainConfig d;
    d.tag = *overrides.preset;
    d.preset = *overrides.preset;
    config.domains = {std::move(d)};
  }
}

imaging::PresetRegistry load_presets(const RunConfig& config) {
  auto registry = imaging::PresetRegistry::builtin();
  if (config.presets_file) registry.merge(imaging::PresetRegistry::load(*config.presets_file));
  return registry;
}

std::vector<dataset::DomainJob> resolve_domains(const RunConfig& config, const imaging::PresetRegistry& presets) {
  std::vector<dataset::DomainJob> jobs;
  for (const auto& d : config.domains) {
    dataset::DomainJob job;
    job.tag = d.tag;
    job.count = d.count;
    if (d.preset) {
      auto spec = presets.find(*d.preset);
      if (!spec) throw ConfigError(fmt::format("domain '{}' names unknown preset '{}'", d.tag, *d.preset));
      job.source = *spec;
    } else if (d.spec) {
      job.source = *d.spec;
    } else {
      job.source = dataset::ExternalIngest{*d.external_dir};
    }
    jobs.push_back(std::move(job));
  }
  return jobs;
}

json provenance(const std::string& config_hash, std::uint64_t seed) {
  return {{"config_hash", config_hash}, {"seed", seed}, {"tool_version", ODKIT_VERSION}};
}

}  // namespace odkit::cli
