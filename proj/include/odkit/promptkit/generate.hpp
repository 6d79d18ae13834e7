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

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "odkit/promptkit/descriptor.hpp"
#include "odkit/promptkit/validate.hpp"

namespace odkit::promptkit {

class BackendError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::string_view kDefaultInstruction =
    "Describe what a {category} looks like so that an object detector could recognise it. "
    "Reply with JSON of the form {\"verb\": \"has\" or \"is\", \"attributes\": [...]} holding two to four "
    "short, distinct phrases about shape, structure, parts or texture. Do not mention any color.";

/// Replaces every "{category}" in the template with the display name.
std::string instantiate_instruction(std::string_view instruction_template, std::string_view category);

class DescriptorBackend {
 public:
  virtual ~DescriptorBackend() = default;
  /// Throws BackendError on transport or parse failure.
  virtual CategoryDescriptor describe(const std::string& category, const std::string& instruction) = 0;
  virtual unsigned max_parallel() const { return 1; }
};

/// Canned descriptors keyed by category name.
class OfflineBackend : public DescriptorBackend {
 public:
  explicit OfflineBackend(std::vector<CategoryDescriptor> fixtures);
  static OfflineBackend load(const std::filesystem::path& path);

  CategoryDescriptor describe(const std::string& category, const std::string& instruction) override;
  unsigned max_parallel() const override { return 8; }

 private:
  std::map<std::string, CategoryDescriptor> fixtures_;
};

struct RemoteConfig {
  std::string url;  // full endpoint, e.g. http://host:8000/v1/chat/completions
  std::string model;
  std::string credential_env = "ODKIT_LLM_API_KEY";
  double timeout_s = 60.0;
  unsigned max_parallel = 4;
  double temperature = 0.0;

  static RemoteConfig from_json(const nlohmann::json& doc);
  static RemoteConfig load(const std::filesystem::path& path);
};

/// OpenAI-compatible chat-completions client. The reply content may be the
/// JSON object requested by the default instruction or a rendered sentence.
class RemoteBackend : public DescriptorBackend {
 public:
  explicit RemoteBackend(RemoteConfig config);

  CategoryDescriptor describe(const std::string& category, const std::string& instruction) override;
  unsigned max_parallel() const override { return config_.max_parallel; }

 private:
  RemoteConfig config_;
};

/// Turns a model reply into a descriptor for `category`.
CategoryDescriptor parse_reply(const std::string& category, std::string_view reply);

struct GenerationResult {
  std::string category;
  std::optional<CategoryDescriptor> descriptor;
  std::optional<ValidationReport> report;
  std::string error;

  bool ok() const { return descriptor.has_value() && report.has_value() && report->passed(); }
};

/// Queries the backend for each category with bounded parallelism. Failures
/// are recorded per category; results follow input order.
std::vector<GenerationResult> generate_descriptors(std::span<const std::string> categories,
                                                   std::string_view instruction_template, DescriptorBackend& backend,
                                                   const ColorBlocklist& blocklist);

nlohmann::json generation_to_json(std::span<const GenerationResult> results);

}  // namespace odkit::promptkit
