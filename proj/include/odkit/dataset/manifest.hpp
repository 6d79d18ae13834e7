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
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "odkit/imaging/spec.hpp"

namespace odkit::dataset {

inline constexpr std::size_t kMaxImagingDomains = 9;
inline constexpr std::size_t kMaxStyleDomains = 9;
inline constexpr std::size_t kMaxDomains = 18;

enum class DomainOrigin { kImaging, kExternal };

struct ManifestImage {
  std::int64_t source_id = 0;
  /// Id of this image in the combined benchmark annotation file.
  std::int64_t benchmark_id = 0;
  std::string file;  // relative to the manifest directory
};

struct ManifestGap {
  std::int64_t source_id = 0;
  std::string error;
};

struct DomainEntry {
  std::string tag;
  DomainOrigin origin = DomainOrigin::kImaging;
  std::optional<imaging::DegradationSpec> spec;  // imaging domains
  std::string external_dir;                      // external-ingest domains
  std::string output_dir;                        // relative to the manifest directory
  std::string annotation_file;                   // relative to the manifest directory
  std::vector<ManifestImage> images;
  std::vector<ManifestGap> gaps;
};

/// Record of one amplification run.
struct DatasetManifest {
  std::string source;
  std::uint64_t seed = 0;
  std::string config_hash;
  std::size_t train_count = 0;  // N: images in the source set
  std::size_t test_count = 0;   // M: synthesized images across domains
  std::string benchmark_annotations;  // relative to the manifest directory
  std::vector<DomainEntry> domains;

  std::size_t total_images() const;
  std::size_t total_gaps() const;
  const DomainEntry* find(const std::string& tag) const;

  /// Unique tags and the 9 + 9 (18 total) domain limits.
  void validate() const;

  nlohmann::json to_json() const;
  static DatasetManifest from_json(const nlohmann::json& j);
  void save(const std::filesystem::path& path) const;
  static DatasetManifest load(const std::filesystem::path& path);
};

}  // namespace odkit::dataset
