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
#include <optional>
#include <span>
#include <vector>

#include "odkit/common/box.hpp"

namespace odkit::eval {

/// Intersection over union; 0 when either box is empty.
double iou(const Box& a, const Box& b);

enum class MatchLabel : std::uint8_t { kFalsePositive, kTruePositive, kIgnored };

struct MatchResult {
  std::vector<MatchLabel> detection_labels;  // one per detection, input order
  std::vector<bool> gt_matched;              // one per ground truth
  std::vector<int> matched_gt;               // gt index per detection or -1
};

/// Greedy one-to-one matching for a single image and category.
///
/// `detections` must already be in descending score order. Each detection
/// claims the unmatched ground truth with the highest IoU that is at least
/// `threshold` (equal IoU resolves to the lower gt index). Unmatched
/// detections are labelled kIgnored instead of kFalsePositive when
/// `ignore_unmatched` is set (categories that are not exhaustively
/// annotated on the image).
MatchResult match_detections(std::span<const Box> detections, std::span<const Box> ground_truth, double threshold,
                             bool ignore_unmatched = false);

/// Number of recall sample points used by ap_from_matches.
inline constexpr int kRecallPoints = 101;

/// 101-point interpolated AP from score-ordered labels (ignored entries are
/// skipped). Returns nullopt when `gt_count` is zero.
std::optional<double> ap_from_matches(std::span<const MatchLabel> labels, std::size_t gt_count);

}  // namespace odkit::eval
