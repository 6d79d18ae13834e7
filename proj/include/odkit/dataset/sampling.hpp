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
#include <vector>

#include "odkit/dataset/annotations.hpp"

namespace odkit::dataset {

struct SampleResult {
  std::vector<std::int64_t> image_ids;  // greedy picks first, then random fill
  std::size_t greedy_count = 0;
  bool clamped = false;  // n exceeded the available images
};

/// Greedy maximum-category-coverage selection: repeatedly takes the image
/// contributing the most uncovered categories (ties to the smallest id),
/// then fills the remaining slots by seeded sampling without replacement.
SampleResult sample_for_domain(const AnnotationSet& annotations, std::size_t n, std::uint64_t seed);

}  // namespace odkit::dataset
