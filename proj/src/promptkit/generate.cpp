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

#include "odkit/promptkit/generate.hpp"

#include <cstdlib>
#include <fstream>

#include <fmt/format.h>
#include <httplib.h>

#include "odkit/common/logging.hpp"
#include "odkit/common/parallel.hpp"

namespace odkit::promptkit {

std::string instantiate_instruction(std::string_view instruction_template, std::string_view category) {
  static constexpr std::string_view kSlot = "{category}";
  const auto name = display_name(category);
  std::string out;
  std::size_t start = 0;
  for (auto pos = instruction_template.find(kSlot); pos != std::string_view::npos;
       pos = instruction_template.find(kSlot, start)) {
    out.append(instruction_template.substr(start, pos - start));
    out.append(name);
    start = pos + kSlot.size();
  }
  out.append(instruction_template.substr(start));
  return out;
}

OfflineBackend::OfflineBackend(std::vector<CategoryDescriptor> fixtures) {
  for (auto& d : fixtures) {
    auto key = d.category;
    fixtures_.insert_or_assign(std::move(key), std::move(d));
  }
}

OfflineBackend OfflineBackend::load(const std::filesystem::path& path) { return OfflineBackend(load_descriptors(path)); }

CategoryDescriptor OfflineBackend::describe(const std::string& category, const std::string&) {
  auto it = fixtures_.find(category);
  if (it == fixtures_.end()) throw BackendError(fmt::format("no offline fixture for category '{}'", category));
  return it->second;
}

RemoteConfig RemoteConfig::from_json(const nlohmann::json& doc) {
  RemoteConfig c;
  try {
    c.url = doc.at("url").get<std::string>();
    c.model = doc.value("model", c.model);
    c.credential_env = doc.value("credential_env", c.credential_env);
    c.timeout_s = doc.value("timeout_s", c.timeout_s);
    c.max_parallel = doc.value("max_parallel", c.max_parallel);
    c.temperature = doc.value("temperature", c.temperature);
  } catch (const nlohmann::json::exception& e) {
    throw BackendError(fmt::format("bad remote backend config: {}", e.what()));
  }
  if (c.max_parallel == 0) c.max_parallel = 1;
  return c;
}

RemoteConfig RemoteConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw BackendError(fmt::format("cannot open {}", path.string()));
  try {
    return from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw BackendError(fmt::format("{}: {}", path.string(), e.what()));
  }
}

RemoteBackend::RemoteBackend(RemoteConfig config) : config_(std::move(config)) {
  if (config_.url.find("://") == std::string::npos) {
    throw BackendError(fmt::format("remote url needs a scheme: '{}'", config_.url));
  }
}

CategoryDescriptor RemoteBackend::describe(const std::string& category, const std::string& instruction) {
  const auto scheme_end = config_.url.find("://");
  const auto path_start = config_.url.find('/', scheme_end + 3);
  const auto base = config_.url.substr(0, path_start);
  const auto path = path_start == std::string::npos ? std::string("/") : config_.url.substr(path_start);

  httplib::Client client(base);
  const auto seconds = static_cast<time_t>(config_.timeout_s);
  const auto micros = static_cast<time_t>((config_.timeout_s - static_cast<double>(seconds)) * 1e6);
  client.set_connection_timeout(seconds, micros);
  client.set_read_timeout(seconds, micros);
  client.set_write_timeout(seconds, micros);

  httplib::Headers headers;
  if (const char* key = std::getenv(config_.credential_env.c_str()); key != nullptr && *key != '\0') {
    headers.emplace("Authorization", fmt::format("Bearer {}", key));
  }
  const nlohmann::json body = {
      {"model", config_.model},
      {"temperature", config_.temperature},
      {"messages", nlohmann::json::array({{{"role", "user"}, {"content", instruction}}})},
  };
  auto res = client.Post(path, headers, body.dump(), "application/json");
  if (!res) throw BackendError(fmt::format("request for '{}' failed: {}", category, httplib::to_string(res.error())));
  if (res->status != 200) {
    throw BackendError(fmt::format("request for '{}' returned HTTP {}: {}", category, res->status, res->body));
  }
  std::string content;
  try {
    const auto reply = nlohmann::json::parse(res->body);
    content = reply.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw BackendError(fmt::format("unparseable response for '{}': {}", category, e.what()));
  }
  return parse_reply(category, content);
}

CategoryDescriptor parse_reply(const std::string& category, std::string_view reply) {
  const auto open = reply.find('{');
  const auto close = reply.rfind('}');
  if (open != std::string_view::npos && close != std::string_view::npos && close > open) {
    const auto doc = nlohmann::json::parse(reply.substr(open, close - open + 1), nullptr, false);
    if (!doc.is_discarded() && doc.is_object() && doc.contains("attributes")) {
      auto entry = doc;
      entry["category"] = category;
      try {
        return descriptor_from_json(entry);
      } catch (const DescriptorError& e) {
        throw BackendError(fmt::format("unparseable reply for '{}': {}", category, e.what()));
      }
    }
  }
  try {
    auto d = parse_prompt(reply);
    d.category = category;
    return d;
  } catch (const DescriptorError& e) {
    throw BackendError(fmt::format("unparseable reply for '{}': {}", category, e.what()));
  }
}

std::vector<GenerationResult> generate_descriptors(std::span<const std::string> categories,
                                                   std::string_view instruction_template, DescriptorBackend& backend,
                                                   const ColorBlocklist& blocklist) {
  std::vector<GenerationResult> results(categories.size());
  parallel_for(categories.size(), backend.max_parallel(), [&](std::size_t i) {
    auto& r = results[i];
    r.category = categories[i];
    try {
      r.descriptor = backend.describe(categories[i], instantiate_instruction(instruction_template, categories[i]));
      r.report = validate(*r.descriptor, blocklist);
    } catch (const std::exception& e) {
      r.error = e.what();
    }
  });
  for (const auto& r : results) {
    if (!r.error.empty()) {
      log().warn("descriptor generation failed category={} error=\"{}\"", r.category, r.error);
    } else if (!r.ok()) {
      log().warn("descriptor needs repair category={} violations={}", r.category, r.report->violations.size());
    }
  }
  return results;
}

nlohmann::json generation_to_json(std::span<const GenerationResult> results) {
  auto list = nlohmann::json::array();
  for (const auto& r : results) {
    nlohmann::json entry = {{"category", r.category}, {"ok", r.ok()}};
    if (r.descriptor) {
      entry["verb"] = verb_name(r.descriptor->verb);
      entry["attributes"] = r.descriptor->attributes;
      entry["prompt"] = r.descriptor->attributes.empty() ? std::string() : render_prompt(*r.descriptor);
    }
    if (r.report) entry["validation"] = report_to_json(*r.report);
    if (!r.error.empty()) entry["error"] = r.error;
    list.push_back(std::move(entry));
  }
  return {{"results", std::move(list)}};
}

}  // namespace odkit::promptkit
