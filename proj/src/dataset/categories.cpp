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

#include "odkit/dataset/categories.hpp"

#include <stdexcept>

namespace odkit::dataset {

std::string_view bucket_code(FrequencyBucket bucket) {
  switch (bucket) {
    case FrequencyBucket::kFrequent:
      return "f";
    case FrequencyBucket::kCommon:
      return "c";
    case FrequencyBucket::kRare:
      return "r";
  }
  return "?";
}

std::string_view bucket_name(FrequencyBucket bucket) {
  switch (bucket) {
    case FrequencyBucket::kFrequent:
      return "frequent";
    case FrequencyBucket::kCommon:
      return "common";
    case FrequencyBucket::kRare:
      return "rare";
  }
  return "unknown";
}

std::optional<FrequencyBucket> parse_bucket(std::string_view code) {
  if (code == "f" || code == "frequent") return FrequencyBucket::kFrequent;
  if (code == "c" || code == "common") return FrequencyBucket::kCommon;
  if (code == "r" || code == "rare") return FrequencyBucket::kRare;
  return std::nullopt;
}

CategoryTable::CategoryTable(std::vector<Category> entries) : entries_(std::move(entries)) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (!by_id_.emplace(entries_[i].id, i).second) {
      throw std::invalid_argument("duplicate category id " + std::to_string(entries_[i].id));
    }
  }
}

const Category* CategoryTable::find(std::int64_t id) const {
  const auto it = by_id_.find(id);
  return it == by_id_.end() ? nullptr : &entries_[it->second];
}

const Category* CategoryTable::find_by_name(std::string_view name) const {
  for (const auto& c : entries_) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

std::size_t CategoryTable::count(FrequencyBucket bucket) const {
  std::size_t n = 0;
  for (const auto& c : entries_) n += c.bucket == bucket ? 1 : 0;
  return n;
}

std::set<std::int64_t> CategoryTable::ids_in(FrequencyBucket bucket) const {
  std::set<std::int64_t> ids;
  for (const auto& c : entries_) {
    if (c.bucket == bucket) ids.insert(c.id);
  }
  return ids;
}

std::set<std::int64_t> CategoryTable::all_ids() const {
  std::set<std::int64_t> ids;
  for (const auto& c : entries_) ids.insert(c.id);
  return ids;
}

std::set<std::int64_t> CategorySplit::open() const {
  std::set<std::int64_t> all = base;
  all.insert(novel.begin(), novel.end());
  return all;
}

CategorySplit split_categories(const CategoryTable& table) {
  CategorySplit split;
  for (const auto& c : table.entries()) {
    if (c.bucket == FrequencyBucket::kRare) {
      split.novel.insert(c.id);
    } else {
      split.base.insert(c.id);
    }
  }
  return split;
}

}  // namespace odkit::dataset
