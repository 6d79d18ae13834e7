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

#include "odkit/dataset/sampling.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "odkit/common/logging.hpp"
#include "odkit/common/rng.hpp"

namespace odkit::dataset {

namespace {

struct Candidate {
  std::size_t gain;
  std::int64_t image_id;
  std::size_t index;

  // Max-heap order: larger gain first, then smaller image id.
  bool operator<(const Candidate& other) const {
    if (gain != other.gain) return gain < other.gain;
    return image_id > other.image_id;
  }
};

}  // namespace

SampleResult sample_for_domain(const AnnotationSet& annotations, std::size_t n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample_for_domain: n must be >= 1");
  SampleResult result;

  std::vector<std::int64_t> ids;
  ids.reserve(annotations.images.size());
  for (const auto& image : annotations.images) ids.push_back(image.id);
  std::sort(ids.begin(), ids.end());

  if (n > ids.size()) {
    log().warn("sample_for_domain: requested {} images but only {} are available; taking all", n, ids.size());
    result.clamped = true;
    n = ids.size();
  }

  std::unordered_map<std::int64_t, std::set<std::int64_t>> categories_of;
  for (const auto& ann : annotations.annotations) categories_of[ann.image_id].insert(ann.category_id);
  const auto cats = [&](std::int64_t id) -> const std::set<std::int64_t>& {
    static const std::set<std::int64_t> kNone;
    const auto it = categories_of.find(id);
    return it == categories_of.end() ? kNone : it->second;
  };

  // Lazy greedy: gains only shrink as coverage grows, so a popped candidate
  // whose refreshed gain still beats the next heap entry is the true argmax.
  std::unordered_set<std::int64_t> covered;
  std::vector<bool> taken(ids.size(), false);
  std::priority_queue<Candidate> heap;
  for (std::size_t i = 0; i < ids.size(); ++i) heap.push({cats(ids[i]).size(), ids[i], i});
  while (result.image_ids.size() < n && !heap.empty()) {
    Candidate top = heap.top();
    heap.pop();
    std::size_t gain = 0;
    for (const auto c : cats(top.image_id)) gain += covered.contains(c) ? 0 : 1;
    if (gain == 0) continue;
    top.gain = gain;
    if (!heap.empty() && top < heap.top()) {
      heap.push(top);
      continue;
    }
    for (const auto c : cats(top.image_id)) covered.insert(c);
    taken[top.index] = true;
    result.image_ids.push_back(top.image_id);
  }
  result.greedy_count = result.image_ids.size();

  std::vector<std::int64_t> rest;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (!taken[i]) rest.push_back(ids[i]);
  }
  Rng rng(seed);
  const std::size_t fill = n - result.image_ids.size();
  for (std::size_t k = 0; k < fill; ++k) {
    const std::size_t j = k + static_cast<std::size_t>(rng.below(rest.size() - k));
    std::swap(rest[k], rest[j]);
    result.image_ids.push_back(rest[k]);
  }
  return result;
}

}  // namespace odkit::dataset
