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

#include "odkit/eval/evaluate.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <map>
#include <numeric>
#include <set>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

#include "odkit/common/logging.hpp"
#include "odkit/eval/matching.hpp"

namespace odkit::eval {

using dataset::AnnotationSet;
using dataset::CategoryTable;
using dataset::FrequencyBucket;
using dataset::ImageRecord;

std::vector<double> default_iou_thresholds() {
  constexpr int kCount = 10;
  const double start = 0.5;
  const double stop = 0.95;
  const double step = (stop - start) / (kCount - 1);
  std::vector<double> thresholds(kCount);
  for (int i = 0; i < kCount; ++i) thresholds[static_cast<std::size_t>(i)] = i * step + start;
  thresholds.back() = stop;
  return thresholds;
}

void EvalConfig::validate() const {
  if (iou_thresholds.empty()) throw EvalError("eval config: at least one IoU threshold is required");
  for (std::size_t i = 0; i < iou_thresholds.size(); ++i) {
    const double t = iou_thresholds[i];
    if (!(t > 0.0 && t <= 1.0)) throw EvalError("eval config: IoU thresholds must lie in (0, 1]");
    if (i > 0 && !(t > iou_thresholds[i - 1])) throw EvalError("eval config: IoU thresholds must strictly increase");
  }
  if (max_detections < 1) throw EvalError("eval config: max detections must be >= 1");
}

std::vector<DetectionRecord> parse_detections(const nlohmann::json& document) {
  if (!document.is_array()) throw EvalError("predictions must be a JSON array");
  std::vector<DetectionRecord> out;
  out.reserve(document.size());
  for (std::size_t i = 0; i < document.size(); ++i) {
    const auto& item = document[i];
    const std::string where = "prediction " + std::to_string(i);
    try {
      DetectionRecord d;
      d.image_id = item.at("image_id").get<std::int64_t>();
      d.category_id = item.at("category_id").get<std::int64_t>();
      const auto bbox = item.at("bbox").get<std::vector<double>>();
      if (bbox.size() != 4) throw EvalError(where + ": bbox must have 4 entries");
      d.bbox = {bbox[0], bbox[1], bbox[2], bbox[3]};
      d.score = item.at("score").get<double>();
      if (!(d.bbox.w > 0.0) || !(d.bbox.h > 0.0)) throw EvalError(where + ": bbox extent must be positive");
      if (!(d.score >= 0.0 && d.score <= 1.0)) throw EvalError(where + ": score must lie in [0, 1]");
      out.push_back(d);
    } catch (const nlohmann::json::exception& e) {
      throw EvalError(where + ": " + e.what());
    }
  }
  return out;
}

std::vector<DetectionRecord> load_detections(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw EvalError("cannot open predictions " + path.string());
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) return {};
  try {
    return parse_detections(nlohmann::json::parse(text));
  } catch (const nlohmann::json::parse_error& e) {
    throw EvalError(path.string() + ": " + e.what());
  }
}

namespace {

struct IndexedDetection {
  std::size_t index;
  DetectionRecord record;
};

// Total order used to make the report independent of input order.
bool canonical_less(const DetectionRecord& a, const DetectionRecord& b) {
  return std::tie(a.image_id, b.score, a.category_id, a.bbox.x, a.bbox.y, a.bbox.w, a.bbox.h) <
         std::tie(b.image_id, a.score, b.category_id, b.bbox.x, b.bbox.y, b.bbox.w, b.bbox.h);
}

std::optional<double> mean_of(const std::vector<double>& values) {
  if (values.empty()) return std::nullopt;
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

bool contains(const std::optional<std::vector<std::int64_t>>& list, std::int64_t id) {
  return list && std::find(list->begin(), list->end(), id) != list->end();
}

struct Entry {
  double score;
  std::size_t index;
  MatchLabel label;
};

}  // namespace

MetricsReport evaluate(const std::vector<DetectionRecord>& detections, const AnnotationSet& annotations,
                       const CategoryTable& categories, const EvalConfig& config) {
  config.validate();
  MetricsReport report;

  std::unordered_map<std::int64_t, const ImageRecord*> images;
  for (const auto& image : annotations.images) images.emplace(image.id, &image);

  std::vector<DetectionRecord> kept;
  kept.reserve(detections.size());
  for (const auto& d : detections) {
    if (!categories.contains(d.category_id)) {
      ++report.dropped_unknown_category;
    } else if (!images.contains(d.image_id)) {
      ++report.dropped_unknown_image;
    } else {
      kept.push_back(d);
    }
  }
  if (report.dropped_unknown_category > 0 || report.dropped_unknown_image > 0) {
    log().warn("evaluate: dropped {} detections with unknown category and {} with unknown image",
               report.dropped_unknown_category, report.dropped_unknown_image);
  }
  std::sort(kept.begin(), kept.end(), canonical_less);

  // Per-image truncation to the top max_detections by score.
  std::vector<IndexedDetection> used;
  used.reserve(kept.size());
  std::size_t per_image = 0;
  for (std::size_t i = 0; i < kept.size(); ++i) {
    per_image = (i > 0 && kept[i].image_id == kept[i - 1].image_id) ? per_image + 1 : 0;
    if (per_image < config.max_detections) used.push_back({used.size(), kept[i]});
  }
  report.detection_count = used.size();

  // category -> image -> items, both ordered for determinism.
  std::map<std::int64_t, std::map<std::int64_t, std::vector<Box>>> gts;
  for (const auto& ann : annotations.annotations) gts[ann.category_id][ann.image_id].push_back(ann.bbox);
  report.gt_count = annotations.annotations.size();

  std::unordered_map<std::int64_t, std::set<std::int64_t>> positives;
  for (const auto& ann : annotations.annotations) positives[ann.image_id].insert(ann.category_id);

  const auto evaluable = [&](const ImageRecord& image, std::int64_t category) {
    if (!config.federated || !image.neg_category_ids) return true;
    const auto it = positives.find(image.id);
    return (it != positives.end() && it->second.contains(category)) || contains(image.neg_category_ids, category);
  };

  std::map<std::int64_t, std::map<std::int64_t, std::vector<const IndexedDetection*>>> dets;
  for (const auto& d : used) {
    if (evaluable(*images.at(d.record.image_id), d.record.category_id)) {
      dets[d.record.category_id][d.record.image_id].push_back(&d);
    }
  }

  std::vector<double> all;
  std::map<FrequencyBucket, std::vector<double>> by_bucket;
  for (const auto& category : categories.entries()) {
    CategoryResult result{category.id, category.name, category.bucket, 0, 0, std::nullopt};
    const auto gt_it = gts.find(category.id);
    const auto dt_it = dets.find(category.id);
    std::set<std::int64_t> image_ids;
    if (gt_it != gts.end()) {
      for (const auto& [image_id, boxes] : gt_it->second) {
        image_ids.insert(image_id);
        result.gt_count += boxes.size();
      }
    }
    if (dt_it != dets.end()) {
      for (const auto& [image_id, items] : dt_it->second) {
        image_ids.insert(image_id);
        result.detection_count += items.size();
      }
    }

    if (result.gt_count > 0) {
      double ap_sum = 0.0;
      for (const double threshold : config.iou_thresholds) {
        std::vector<Entry> entries;
        for (const auto image_id : image_ids) {
          std::vector<Box> det_boxes;
          std::vector<const IndexedDetection*> det_items;
          if (dt_it != dets.end()) {
            if (const auto it = dt_it->second.find(image_id); it != dt_it->second.end()) det_items = it->second;
          }
          for (const auto* d : det_items) det_boxes.push_back(d->record.bbox);
          std::vector<Box> gt_boxes;
          if (gt_it != gts.end()) {
            if (const auto it = gt_it->second.find(image_id); it != gt_it->second.end()) gt_boxes = it->second;
          }
          const bool ignore_unmatched =
              config.federated && contains(images.at(image_id)->not_exhaustive_category_ids, category.id);
          const MatchResult match = match_detections(det_boxes, gt_boxes, threshold, ignore_unmatched);
          for (std::size_t k = 0; k < det_items.size(); ++k) {
            entries.push_back({det_items[k]->record.score, det_items[k]->index, match.detection_labels[k]});
          }
        }
        std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
          return a.score != b.score ? a.score > b.score : a.index < b.index;
        });
        std::vector<MatchLabel> labels;
        labels.reserve(entries.size());
        for (const auto& e : entries) labels.push_back(e.label);
        ap_sum += *ap_from_matches(labels, result.gt_count);
      }
      result.ap = 100.0 * ap_sum / static_cast<double>(config.iou_thresholds.size());
      all.push_back(*result.ap);
      by_bucket[category.bucket].push_back(*result.ap);
    }
    report.per_category.push_back(std::move(result));
  }

  report.ap = mean_of(all);
  report.ap_frequent = mean_of(by_bucket[FrequencyBucket::kFrequent]);
  report.ap_common = mean_of(by_bucket[FrequencyBucket::kCommon]);
  report.ap_rare = mean_of(by_bucket[FrequencyBucket::kRare]);
  return report;
}

MetricsReport evaluate_per_domain(const std::vector<DetectionRecord>& detections,
                                  const dataset::DatasetManifest& manifest, const AnnotationSet& annotations,
                                  const CategoryTable& categories, const EvalConfig& config) {
  std::unordered_map<std::int64_t, std::size_t> domain_of;
  std::vector<std::vector<std::int64_t>> domain_images(manifest.domains.size());
  std::vector<std::int64_t> all_images;
  for (std::size_t d = 0; d < manifest.domains.size(); ++d) {
    for (const auto& image : manifest.domains[d].images) {
      if (!domain_of.emplace(image.benchmark_id, d).second) {
        throw EvalError("image " + std::to_string(image.benchmark_id) + " is listed in more than one domain");
      }
      domain_images[d].push_back(image.benchmark_id);
      all_images.push_back(image.benchmark_id);
    }
  }

  std::vector<std::vector<DetectionRecord>> domain_dets(manifest.domains.size());
  std::vector<DetectionRecord> pooled_dets;
  std::size_t outside = 0;
  for (const auto& d : detections) {
    const auto it = domain_of.find(d.image_id);
    if (it == domain_of.end()) {
      ++outside;
      continue;
    }
    domain_dets[it->second].push_back(d);
    pooled_dets.push_back(d);
  }
  if (outside > 0) log().warn("evaluate_per_domain: dropped {} detections on images absent from the manifest", outside);

  MetricsReport report = evaluate(pooled_dets, annotations.subset(all_images), categories, config);
  report.dropped_unknown_image += outside;
  for (std::size_t d = 0; d < manifest.domains.size(); ++d) {
    report.per_domain[manifest.domains[d].tag] =
        evaluate(domain_dets[d], annotations.subset(domain_images[d]), categories, config);
  }
  return report;
}

}  // namespace odkit::eval
