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

#include "odkit/eval/matching.hpp"

#include <algorithm>

namespace odkit::eval {

double iou(const Box& a, const Box& b) {
  const double ix = std::max(0.0, std::min(a.right(), b.right()) - std::max(a.x, b.x));
  const double iy = std::max(0.0, std::min(a.bottom(), b.bottom()) - std::max(a.y, b.y));
  const double inter = ix * iy;
  const double uni = a.area() + b.area() - inter;
  return uni > 0.0 ? inter / uni : 0.0;
}

MatchResult match_detections(std::span<const Box> detections, std::span<const Box> ground_truth, double threshold,
                             bool ignore_unmatched) {
  MatchResult result;
  result.detection_labels.assign(detections.size(), MatchLabel::kFalsePositive);
  result.gt_matched.assign(ground_truth.size(), false);
  result.matched_gt.assign(detections.size(), -1);
  // Same guard as the COCO reference so an IoU of exactly 1 still matches
  // at threshold 1.
  const double floor_iou = std::min(threshold, 1.0 - 1e-10);
  for (std::size_t d = 0; d < detections.size(); ++d) {
    double best = floor_iou;
    int best_gt = -1;
    for (std::size_t g = 0; g < ground_truth.size(); ++g) {
      if (result.gt_matched[g]) continue;
      const double overlap = iou(detections[d], ground_truth[g]);
      if (overlap < floor_iou) continue;
      if (best_gt < 0 || overlap > best) {
        best = overlap;
        best_gt = static_cast<int>(g);
      }
    }
    if (best_gt >= 0) {
      result.gt_matched[static_cast<std::size_t>(best_gt)] = true;
      result.matched_gt[d] = best_gt;
      result.detection_labels[d] = MatchLabel::kTruePositive;
    } else if (ignore_unmatched) {
      result.detection_labels[d] = MatchLabel::kIgnored;
    }
  }
  return result;
}

std::optional<double> ap_from_matches(std::span<const MatchLabel> labels, std::size_t gt_count) {
  if (gt_count == 0) return std::nullopt;
  std::vector<double> recall;
  std::vector<double> precision;
  double tp = 0.0;
  double fp = 0.0;
  for (const MatchLabel label : labels) {
    if (label == MatchLabel::kIgnored) continue;
    (label == MatchLabel::kTruePositive ? tp : fp) += 1.0;
    recall.push_back(tp / static_cast<double>(gt_count));
    precision.push_back(tp / (tp + fp));
  }
  // Precision envelope: running maximum from the right.
  for (std::size_t i = precision.size(); i-- > 1;) precision[i - 1] = std::max(precision[i - 1], precision[i]);

  // Sample points as numpy.linspace(0, 1, 101) produces them.
  constexpr double kStep = 1.0 / (kRecallPoints - 1);
  double total = 0.0;
  for (int r = 0; r < kRecallPoints; ++r) {
    const double target = r == kRecallPoints - 1 ? 1.0 : r * kStep;
    const auto it = std::lower_bound(recall.begin(), recall.end(), target);
    if (it != recall.end()) total += precision[static_cast<std::size_t>(it - recall.begin())];
  }
  return total / kRecallPoints;
}

}  // namespace odkit::eval
