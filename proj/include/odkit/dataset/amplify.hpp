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
#include <variant>
#include <vector>

#include "odkit/dataset/annotations.hpp"
#include "odkit/dataset/manifest.hpp"
#include "odkit/imaging/spec.hpp"

namespace odkit::dataset {

/// Pre-rendered images (e.g. style-transferred) matched to sampled source
/// images by file stem.
struct ExternalIngest {
  std::filesystem::path directory;
};

struct DomainJob {
  std::string tag;
  std::variant<imaging::DegradationSpec, ExternalIngest> source;
  std::optional<std::size_t> count;  // overrides AmplifyOptions::per_domain_count
};

struct AmplifyOptions {
  std::filesystem::path image_root;
  std::filesystem::path out_dir;
  std::uint64_t seed = 0;
  std::size_t per_domain_count = 0;
  unsigned workers = 1;
  std::string source_ref;
  std::string config_hash;
};

/// Per-image degradation seed, independent of processing order.
std::uint64_t image_seed(std::uint64_t global_seed, std::int64_t image_id, const std::string& domain_tag);

/// Equal split of `total` over `domains`.
std::size_t equal_split(std::size_t total, std::size_t domains);

/// Samples, degrades and writes every domain, plus per-domain and combined
/// annotation files and the manifest (out_dir/manifest.json).
///
/// Annotation objects are copied verbatim. Per-image failures become
/// manifest gap entries; invalid specs or unwritable output throw.
DatasetManifest amplify(const Dataset& dataset, const std::vector<DomainJob>& jobs, const AmplifyOptions& options);

}  // namespace odkit::dataset
