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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "odkit/common/box.hpp"
#include "odkit/dataset/annotations.hpp"
#include "odkit/dataset/categories.hpp"
#include "odkit/dataset/manifest.hpp"

namespace odkit::eval {

class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DetectionRecord {
  std::int64_t image_id = 0;
  std::int64_t category_id = 0;
  Box bbox;
  double score = 0.0;
};

/// Reads a COCO-results style array of {image_id, category_id, bbox, score}.
/// Throws EvalError on schema violations (including w/h <= 0 or a score
/// outside [0, 1]).
std::vector<DetectionRecord> load_detections(const std::filesystem::path& path);
std::vector<DetectionRecord> parse_detections(const nlohmann::json& document);

/// IoU thresholds 0.50:0.05:0.95 built the way numpy.linspace does.
std::vector<double> default_iou_thresholds();

struct EvalConfig {
  std::vector<double> iou_thresholds = default_iou_thresholds();
  std::size_t max_detections = 300;  // per image, across categories
  bool federated = true;

  /// Thresholds strictly increasing within (0, 1]; max_detections >= 1.
  void validate() const;
};

struct CategoryResult {
  std::int64_t id = 0;
  std::string name;
  dataset::FrequencyBucket bucket = dataset::FrequencyBucket::kFrequent;
  std::size_t gt_count = 0;
  std::size_t detection_count = 0;
  std::optional<double> ap;  // percent; nullopt without ground truth
};

/// AP values are percentages. Bucket means are nullopt when no category of
/// the bucket has ground truth.
struct MetricsReport {
  std::optional<double> ap;
  std::optional<double> ap_frequent;
  std::optional<double> ap_common;
  std::optional<double> ap_rare;
  std::vector<CategoryResult> per_category;
  std::size_t gt_count = 0;
  std::size_t detection_count = 0;
  std::size_t dropped_unknown_category = 0;
  std::size_t dropped_unknown_image = 0;
  std::map<std::string, MetricsReport> per_domain;
};

MetricsReport evaluate(const std::vector<DetectionRecord>& detections, const dataset::AnnotationSet& annotations,
                       const dataset::CategoryTable& categories, const EvalConfig& config);

/// Pooled report plus one sub-report per manifest domain, keyed by tag.
/// Images are matched through the manifest's benchmark ids.
MetricsReport evaluate_per_domain(const std::vector<DetectionRecord>& detections,
                                  const dataset::DatasetManifest& manifest, const dataset::AnnotationSet& annotations,
                                  const dataset::CategoryTable& categories, const EvalConfig& config);

nlohmann::json report_to_json(const MetricsReport& report);
/// Aligned plain-text summary table.
std::string report_to_table(const MetricsReport& report);

}  // namespace odkit::eval
