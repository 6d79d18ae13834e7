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
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace odkit::dataset {

enum class FrequencyBucket { kFrequent, kCommon, kRare };

/// "f", "c" or "r" (LVIS spelling).
std::string_view bucket_code(FrequencyBucket bucket);
std::string_view bucket_name(FrequencyBucket bucket);
std::optional<FrequencyBucket> parse_bucket(std::string_view code);

struct Category {
  std::int64_t id = 0;
  std::string name;
  FrequencyBucket bucket = FrequencyBucket::kFrequent;
};

/// The category taxonomy with its frequency buckets.
class CategoryTable {
 public:
  CategoryTable() = default;
  /// Throws std::invalid_argument on duplicate ids.
  explicit CategoryTable(std::vector<Category> entries);

  const std::vector<Category>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  const Category* find(std::int64_t id) const;
  bool contains(std::int64_t id) const { return find(id) != nullptr; }
  const Category* find_by_name(std::string_view name) const;

  std::size_t count(FrequencyBucket bucket) const;
  std::set<std::int64_t> ids_in(FrequencyBucket bucket) const;
  std::set<std::int64_t> all_ids() const;

 private:
  std::vector<Category> entries_;
  std::unordered_map<std::int64_t, std::size_t> by_id_;
};

/// base = frequent + common, novel = rare.
struct CategorySplit {
  std::set<std::int64_t> base;
  std::set<std::int64_t> novel;

  std::set<std::int64_t> open() const;
};

CategorySplit split_categories(const CategoryTable& table);

}  // namespace odkit::dataset
