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

#include <fmt/format.h>

#include "odkit/eval/evaluate.hpp"

namespace odkit::eval {

namespace {

nlohmann::json optional_value(const std::optional<double>& value) {
  return value ? nlohmann::json(*value) : nlohmann::json(nullptr);
}

std::string cell(const std::optional<double>& value) { return value ? fmt::format("{:.1f}", *value) : "-"; }

void add_row(std::string& out, const std::string& scope, const MetricsReport& r) {
  out += fmt::format("{:<24} {:>6} {:>6} {:>6} {:>6} {:>8} {:>8}\n", scope, cell(r.ap), cell(r.ap_frequent),
                     cell(r.ap_common), cell(r.ap_rare), r.gt_count, r.detection_count);
}

}  // namespace

nlohmann::json report_to_json(const MetricsReport& report) {
  nlohmann::json j;
  j["AP"] = optional_value(report.ap);
  j["AP_f"] = optional_value(report.ap_frequent);
  j["AP_c"] = optional_value(report.ap_common);
  j["AP_r"] = optional_value(report.ap_rare);
  j["gt_count"] = report.gt_count;
  j["detection_count"] = report.detection_count;
  j["dropped"] = {{"unknown_category", report.dropped_unknown_category},
                  {"unknown_image", report.dropped_unknown_image}};
  j["per_category"] = nlohmann::json::array();
  for (const auto& c : report.per_category) {
    if (c.gt_count == 0 && c.detection_count == 0) continue;
    j["per_category"].push_back({{"id", c.id},
                                 {"name", c.name},
                                 {"bucket", std::string(dataset::bucket_code(c.bucket))},
                                 {"gt_count", c.gt_count},
                                 {"detection_count", c.detection_count},
                                 {"AP", optional_value(c.ap)}});
  }
  if (!report.per_domain.empty()) {
    j["per_domain"] = nlohmann::json::object();
    for (const auto& [tag, sub] : report.per_domain) j["per_domain"][tag] = report_to_json(sub);
  }
  return j;
}

std::string report_to_table(const MetricsReport& report) {
  std::string out = fmt::format("{:<24} {:>6} {:>6} {:>6} {:>6} {:>8} {:>8}\n", "scope", "AP", "AP_f", "AP_c",
                                "AP_r", "#gt", "#det");
  add_row(out, "pooled", report);
  for (const auto& [tag, sub] : report.per_domain) add_row(out, tag, sub);
  return out;
}

}  // namespace odkit::eval
