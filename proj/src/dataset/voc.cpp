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

#include "odkit/dataset/voc.hpp"

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include <algorithm>
#include <cstdio>
#include <string>
#include <unordered_map>

namespace odkit::dataset {

namespace fs = std::filesystem;
namespace pt = boost::property_tree;

namespace {

// Fixed six decimals with trailing zeros trimmed; stable under
// VOC -> internal -> VOC for pixel-scale coordinates.
std::string format_coordinate(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.6f", value);
  std::string text(buffer);
  while (!text.empty() && text.back() == '0') text.pop_back();
  if (!text.empty() && text.back() == '.') text.pop_back();
  if (text == "-0") text = "0";
  return text;
}

}  // namespace

std::size_t export_voc(const AnnotationSet& annotations, const CategoryTable& categories, const fs::path& out_dir) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw DatasetError("cannot create VOC directory " + out_dir.string());

  const auto by_image = annotations.annotations_by_image();
  const pt::xml_writer_settings<std::string> settings(' ', 2);
  std::size_t written = 0;
  for (const auto& image : annotations.images) {
    pt::ptree root;
    pt::ptree& node = root.add_child("annotation", pt::ptree{});
    const fs::path file(image.file_name.empty() ? std::to_string(image.id) + ".jpg" : image.file_name);
    node.put("folder", file.parent_path().string());
    node.put("filename", file.filename().string());
    node.put("size.width", image.width);
    node.put("size.height", image.height);
    node.put("size.depth", 3);
    node.put("segmented", 0);
    if (const auto it = by_image.find(image.id); it != by_image.end()) {
      for (const auto a : it->second) {
        const Annotation& ann = annotations.annotations[a];
        const Category* category = categories.find(ann.category_id);
        if (!category) throw UnknownCategoryError(ann.id, ann.category_id);
        pt::ptree object;
        object.put("name", category->name);
        object.put("difficult", 0);
        object.put("bndbox.xmin", format_coordinate(ann.bbox.x));
        object.put("bndbox.ymin", format_coordinate(ann.bbox.y));
        object.put("bndbox.xmax", format_coordinate(ann.bbox.right()));
        object.put("bndbox.ymax", format_coordinate(ann.bbox.bottom()));
        node.add_child("object", object);
      }
    }
    const fs::path target = out_dir / (file.stem().string() + ".xml");
    try {
      pt::write_xml(target.string(), root, std::locale(), settings);
    } catch (const pt::xml_parser_error& e) {
      throw DatasetError("cannot write " + target.string() + ": " + e.what());
    }
    ++written;
  }
  return written;
}

AnnotationSet load_voc(const fs::path& dir, const CategoryTable& categories) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() == ".xml") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  AnnotationSet out;
  std::int64_t next_annotation = 1;
  for (std::size_t i = 0; i < files.size(); ++i) {
    pt::ptree root;
    try {
      pt::read_xml(files[i].string(), root, pt::xml_parser::trim_whitespace);
    } catch (const pt::xml_parser_error& e) {
      throw MalformedAnnotationsError(e.what());
    }
    const pt::ptree& node = root.get_child("annotation");
    ImageRecord image;
    image.id = static_cast<std::int64_t>(i + 1);
    const std::string folder = node.get<std::string>("folder", "");
    const std::string filename = node.get<std::string>("filename");
    image.file_name = folder.empty() ? filename : (fs::path(folder) / filename).string();
    image.width = node.get<int>("size.width");
    image.height = node.get<int>("size.height");
    image.raw = {{"id", image.id}, {"file_name", image.file_name}, {"width", image.width}, {"height", image.height}};
    for (const auto& [key, child] : node) {
      if (key != "object") continue;
      const std::string name = child.get<std::string>("name");
      Annotation ann;
      ann.id = next_annotation++;
      ann.image_id = image.id;
      const Category* category = categories.find_by_name(name);
      if (!category) throw MalformedAnnotationsError(files[i].string() + ": unknown category name '" + name + "'");
      ann.category_id = category->id;
      const double xmin = child.get<double>("bndbox.xmin");
      const double ymin = child.get<double>("bndbox.ymin");
      ann.bbox = {xmin, ymin, child.get<double>("bndbox.xmax") - xmin, child.get<double>("bndbox.ymax") - ymin};
      ann.raw = {{"id", ann.id},
                 {"image_id", ann.image_id},
                 {"category_id", ann.category_id},
                 {"bbox", {ann.bbox.x, ann.bbox.y, ann.bbox.w, ann.bbox.h}}};
      out.annotations.push_back(std::move(ann));
    }
    out.images.push_back(std::move(image));
  }
  validate(out, categories);
  return out;
}

}  // namespace odkit::dataset
