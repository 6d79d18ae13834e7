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
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "odkit/common/box.hpp"
#include "odkit/dataset/categories.hpp"

namespace odkit::dataset {

class DatasetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unreadable file, invalid JSON or schema violations (missing fields,
/// duplicate ids, dangling image references).
class MalformedAnnotationsError : public DatasetError {
 public:
  using DatasetError::DatasetError;
};

/// Box with non-positive extent or outside its image.
class InvalidBoxError : public DatasetError {
 public:
  InvalidBoxError(std::int64_t annotation_id, const std::string& detail);
  std::int64_t annotation_id() const { return annotation_id_; }

 private:
  std::int64_t annotation_id_;
};

class UnknownCategoryError : public DatasetError {
 public:
  UnknownCategoryError(std::int64_t annotation_id, std::int64_t category_id);
  std::int64_t annotation_id() const { return annotation_id_; }
  std::int64_t category_id() const { return category_id_; }

 private:
  std::int64_t annotation_id_;
  std::int64_t category_id_;
};

/// Boxes may overhang the image edge by this many pixels before they are
/// rejected; source annotations carry rounding at the border.
inline constexpr double kBoundsTolerance = 1.0;

struct ImageRecord {
  std::int64_t id = 0;
  std::string file_name;
  int width = 0;
  int height = 0;
  /// Present only when the source lists them (federated annotations).
  std::optional<std::vector<std::int64_t>> neg_category_ids;
  std::optional<std::vector<std::int64_t>> not_exhaustive_category_ids;
  /// The original JSON object, re-emitted on export.
  nlohmann::json raw = nlohmann::json::object();
};

struct Annotation {
  std::int64_t id = 0;
  std::int64_t image_id = 0;
  Box bbox;
  std::int64_t category_id = 0;
  /// The original JSON object (segmentation and any other payload travel
  /// here untouched).
  nlohmann::json raw = nlohmann::json::object();
};

struct AnnotationSet {
  std::vector<ImageRecord> images;
  std::vector<Annotation> annotations;

  const ImageRecord* find_image(std::int64_t id) const;
  /// image id -> indices into `annotations`, in file order.
  std::unordered_map<std::int64_t, std::vector<std::size_t>> annotations_by_image() const;
  /// Keeps only the listed images and their annotations.
  AnnotationSet subset(const std::vector<std::int64_t>& image_ids) const;
};

/// A parsed LVIS-schema file.
struct Dataset {
  AnnotationSet annotations;
  CategoryTable categories;
  nlohmann::json raw_categories = nlohmann::json::array();
  nlohmann::json info = nlohmann::json::object();
};

/// Reads and validates an LVIS-schema annotation file. A zero-length file
/// yields an empty dataset.
Dataset load_annotations(const std::filesystem::path& path);
Dataset parse_annotations(const nlohmann::json& document);

/// Enforces box and category invariants; throws the first violation.
void validate(const AnnotationSet& annotations, const CategoryTable& categories);

/// Serializes back to the LVIS schema from the raw objects.
nlohmann::json to_lvis_json(const AnnotationSet& annotations, const nlohmann::json& raw_categories,
                            const nlohmann::json& info = nlohmann::json::object());

/// Image file reference: `file_name` if set, else the basename of `coco_url`.
std::string image_file_reference(const nlohmann::json& raw_image);

/// Reads one image id per line ('#' comments allowed).
std::vector<std::int64_t> read_id_list(const std::filesystem::path& path);

/// Drops the listed images (manual-cleaning exclusions) and their annotations.
AnnotationSet exclude_images(const AnnotationSet& annotations, const std::vector<std::int64_t>& excluded);

}  // namespace odkit::dataset
