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

#include <filesystem>

#include "odkit/dataset/annotations.hpp"

namespace odkit::dataset {

/// Writes one Pascal-VOC XML file per image (`<stem>.xml`). Returns the
/// number of files written.
std::size_t export_voc(const AnnotationSet& annotations, const CategoryTable& categories,
                       const std::filesystem::path& out_dir);

/// Reads every *.xml in `dir` (sorted by name). Image ids are assigned in
/// that order from 1, annotation ids sequentially; names resolve through
/// `categories`.
AnnotationSet load_voc(const std::filesystem::path& dir, const CategoryTable& categories);

}  // namespace odkit::dataset
