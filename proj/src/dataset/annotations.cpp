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

#include "odkit/dataset/annotations.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_set>

namespace odkit::dataset {

InvalidBoxError::InvalidBoxError(std::int64_t annotation_id, const std::string& detail)
    : DatasetError("annotation " + std::to_string(annotation_id) + ": " + detail), annotation_id_(annotation_id) {}

UnknownCategoryError::UnknownCategoryError(std::int64_t annotation_id, std::int64_t category_id)
    : DatasetError("annotation " + std::to_string(annotation_id) + ": unknown category id " +
                   std::to_string(category_id)),
      annotation_id_(annotation_id),
      category_id_(category_id) {}

const ImageRecord* AnnotationSet::find_image(std::int64_t id) const {
  for (const auto& image : images) {
    if (image.id == id) return &image;
  }
  return nullptr;
}

std::unordered_map<std::int64_t, std::vector<std::size_t>> AnnotationSet::annotations_by_image() const {
  std::unordered_map<std::int64_t, std::vector<std::size_t>> index;
  for (std::size_t i = 0; i < annotations.size(); ++i) index[annotations[i].image_id].push_back(i);
  return index;
}

AnnotationSet AnnotationSet::subset(const std::vector<std::int64_t>& image_ids) const {
  std::unordered_map<std::int64_t, const ImageRecord*> by_id;
  for (const auto& image : images) by_id.emplace(image.id, &image);
  AnnotationSet out;
  std::unordered_set<std::int64_t> keep;
  for (const auto id : image_ids) {
    const auto it = by_id.find(id);
    if (it == by_id.end() || !keep.insert(id).second) continue;
    out.images.push_back(*it->second);
  }
  for (const auto& ann : annotations) {
    if (keep.contains(ann.image_id)) out.annotations.push_back(ann);
  }
  return out;
}

std::string image_file_reference(const nlohmann::json& raw_image) {
  if (const auto it = raw_image.find("file_name"); it != raw_image.end() && it->is_string()) {
    return it->get<std::string>();
  }
  if (const auto it = raw_image.find("coco_url"); it != raw_image.end() && it->is_string()) {
    const auto url = it->get<std::string>();
    const auto slash = url.find_last_of('/');
    return slash == std::string::npos ? url : url.substr(slash + 1);
  }
  return {};
}

namespace {

template <typename T>
T field(const nlohmann::json& object, const char* key, const std::string& where) {
  const auto it = object.find(key);
  if (it == object.end()) throw MalformedAnnotationsError(where + ": missing field '" + key + "'");
  try {
    return it->get<T>();
  } catch (const nlohmann::json::exception&) {
    throw MalformedAnnotationsError(where + ": field '" + key + "' has the wrong type");
  }
}

std::optional<std::vector<std::int64_t>> optional_ids(const nlohmann::json& object, const char* key,
                                                      const std::string& where) {
  if (!object.contains(key)) return std::nullopt;
  return field<std::vector<std::int64_t>>(object, key, where);
}

const nlohmann::json& array_or_empty(const nlohmann::json& document, const char* key) {
  static const nlohmann::json kEmpty = nlohmann::json::array();
  const auto it = document.find(key);
  if (it == document.end() || it->is_null()) return kEmpty;
  if (!it->is_array()) throw MalformedAnnotationsError(std::string("'") + key + "' must be an array");
  return *it;
}

}  // namespace

Dataset parse_annotations(const nlohmann::json& document) {
  Dataset dataset;
  if (document.is_null()) return dataset;
  if (!document.is_object()) throw MalformedAnnotationsError("annotation document must be a JSON object");
  if (const auto it = document.find("info"); it != document.end()) dataset.info = *it;

  std::vector<Category> categories;
  for (const auto& raw : array_or_empty(document, "categories")) {
    const std::string where = "category";
    const auto id = field<std::int64_t>(raw, "id", where);
    const auto code = field<std::string>(raw, "frequency", where + " " + std::to_string(id));
    const auto bucket = parse_bucket(code);
    if (!bucket) throw MalformedAnnotationsError("category " + std::to_string(id) + ": unknown frequency '" + code + "'");
    categories.push_back({id, field<std::string>(raw, "name", where + " " + std::to_string(id)), *bucket});
    dataset.raw_categories.push_back(raw);
  }
  try {
    dataset.categories = CategoryTable(std::move(categories));
  } catch (const std::invalid_argument& e) {
    throw MalformedAnnotationsError(e.what());
  }

  for (const auto& raw : array_or_empty(document, "images")) {
    ImageRecord image;
    image.id = field<std::int64_t>(raw, "id", "image");
    const std::string where = "image " + std::to_string(image.id);
    image.width = field<int>(raw, "width", where);
    image.height = field<int>(raw, "height", where);
    if (image.width <= 0 || image.height <= 0) throw MalformedAnnotationsError(where + ": non-positive size");
    image.file_name = image_file_reference(raw);
    image.neg_category_ids = optional_ids(raw, "neg_category_ids", where);
    image.not_exhaustive_category_ids = optional_ids(raw, "not_exhaustive_category_ids", where);
    image.raw = raw;
    dataset.annotations.images.push_back(std::move(image));
  }

  for (const auto& raw : array_or_empty(document, "annotations")) {
    Annotation ann;
    ann.id = field<std::int64_t>(raw, "id", "annotation");
    const std::string where = "annotation " + std::to_string(ann.id);
    ann.image_id = field<std::int64_t>(raw, "image_id", where);
    ann.category_id = field<std::int64_t>(raw, "category_id", where);
    const auto bbox = field<std::vector<double>>(raw, "bbox", where);
    if (bbox.size() != 4) throw MalformedAnnotationsError(where + ": bbox must have 4 entries");
    ann.bbox = {bbox[0], bbox[1], bbox[2], bbox[3]};
    ann.raw = raw;
    dataset.annotations.annotations.push_back(std::move(ann));
  }

  validate(dataset.annotations, dataset.categories);
  return dataset;
}

void validate(const AnnotationSet& annotations, const CategoryTable& categories) {
  std::unordered_map<std::int64_t, const ImageRecord*> images;
  for (const auto& image : annotations.images) {
    if (!images.emplace(image.id, &image).second) {
      throw MalformedAnnotationsError("duplicate image id " + std::to_string(image.id));
    }
    for (const auto* list : {&image.neg_category_ids, &image.not_exhaustive_category_ids}) {
      if (!*list) continue;
      for (const auto c : **list) {
        if (!categories.contains(c)) {
          throw MalformedAnnotationsError("image " + std::to_string(image.id) + ": unknown category id " +
                                          std::to_string(c) + " in category list");
        }
      }
    }
  }
  std::unordered_set<std::int64_t> seen;
  for (const auto& ann : annotations.annotations) {
    if (!seen.insert(ann.id).second) {
      throw MalformedAnnotationsError("duplicate annotation id " + std::to_string(ann.id));
    }
    const auto it = images.find(ann.image_id);
    if (it == images.end()) {
      throw MalformedAnnotationsError("annotation " + std::to_string(ann.id) + ": unknown image id " +
                                      std::to_string(ann.image_id));
    }
    if (!categories.contains(ann.category_id)) throw UnknownCategoryError(ann.id, ann.category_id);
    const Box& b = ann.bbox;
    if (!(b.w > 0.0) || !(b.h > 0.0)) throw InvalidBoxError(ann.id, "box extent must be positive");
    const ImageRecord& image = *it->second;
    if (b.x < -kBoundsTolerance || b.y < -kBoundsTolerance || b.right() > image.width + kBoundsTolerance ||
        b.bottom() > image.height + kBoundsTolerance) {
      throw InvalidBoxError(ann.id, "box lies outside image " + std::to_string(image.id));
    }
  }
}

Dataset load_annotations(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MalformedAnnotationsError("cannot open annotation file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  if (std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isspace(c); })) return {};
  nlohmann::json document;
  try {
    document = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw MalformedAnnotationsError(path.string() + ": " + e.what());
  }
  return parse_annotations(document);
}

nlohmann::json to_lvis_json(const AnnotationSet& annotations, const nlohmann::json& raw_categories,
                            const nlohmann::json& info) {
  nlohmann::json document;
  document["info"] = info;
  document["images"] = nlohmann::json::array();
  for (const auto& image : annotations.images) document["images"].push_back(image.raw);
  document["annotations"] = nlohmann::json::array();
  for (const auto& ann : annotations.annotations) document["annotations"].push_back(ann.raw);
  document["categories"] = raw_categories;
  return document;
}

std::vector<std::int64_t> read_id_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DatasetError("cannot open id list " + path.string());
  std::vector<std::int64_t> ids;
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    std::int64_t id = 0;
    while (fields >> id) ids.push_back(id);
  }
  return ids;
}

AnnotationSet exclude_images(const AnnotationSet& annotations, const std::vector<std::int64_t>& excluded) {
  const std::unordered_set<std::int64_t> drop(excluded.begin(), excluded.end());
  std::vector<std::int64_t> keep;
  for (const auto& image : annotations.images) {
    if (!drop.contains(image.id)) keep.push_back(image.id);
  }
  return annotations.subset(keep);
}

}  // namespace odkit::dataset
