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

#include "odkit/dataset/manifest.hpp"

#include <fstream>
#include <set>

#include "odkit/dataset/annotations.hpp"

namespace odkit::dataset {

std::size_t DatasetManifest::total_images() const {
  std::size_t total = 0;
  for (const auto& d : domains) total += d.images.size();
  return total;
}

std::size_t DatasetManifest::total_gaps() const {
  std::size_t total = 0;
  for (const auto& d : domains) total += d.gaps.size();
  return total;
}

const DomainEntry* DatasetManifest::find(const std::string& tag) const {
  for (const auto& d : domains) {
    if (d.tag == tag) return &d;
  }
  return nullptr;
}

void DatasetManifest::validate() const {
  std::set<std::string> tags;
  std::size_t imaging = 0;
  std::size_t external = 0;
  for (const auto& d : domains) {
    if (d.tag.empty()) throw DatasetError("manifest: empty domain tag");
    if (!tags.insert(d.tag).second) throw DatasetError("manifest: duplicate domain tag '" + d.tag + "'");
    (d.origin == DomainOrigin::kImaging ? imaging : external) += 1;
  }
  if (imaging > kMaxImagingDomains) throw DatasetError("manifest: more than 9 imaging-condition domains");
  if (external > kMaxStyleDomains) throw DatasetError("manifest: more than 9 style domains");
  if (domains.size() > kMaxDomains) throw DatasetError("manifest: more than 18 domains");
}

nlohmann::json DatasetManifest::to_json() const {
  nlohmann::json j;
  j["format"] = "odkit-manifest/1";
  j["source"] = source;
  j["seed"] = seed;
  j["config_hash"] = config_hash;
  j["totals"] = {{"N", train_count}, {"M", test_count}, {"images", total_images()}, {"gaps", total_gaps()}};
  j["benchmark_annotations"] = benchmark_annotations;
  j["domains"] = nlohmann::json::array();
  for (const auto& d : domains) {
    nlohmann::json entry;
    entry["tag"] = d.tag;
    entry["origin"] = d.origin == DomainOrigin::kImaging ? "imaging" : "external";
    if (d.spec) entry["spec"] = d.spec->to_json();
    if (!d.external_dir.empty()) entry["external_dir"] = d.external_dir;
    entry["output_dir"] = d.output_dir;
    entry["annotation_file"] = d.annotation_file;
    entry["count"] = d.images.size();
    entry["images"] = nlohmann::json::array();
    for (const auto& image : d.images) {
      entry["images"].push_back({{"source_id", image.source_id}, {"benchmark_id", image.benchmark_id}, {"file", image.file}});
    }
    entry["gaps"] = nlohmann::json::array();
    for (const auto& gap : d.gaps) entry["gaps"].push_back({{"source_id", gap.source_id}, {"error", gap.error}});
    j["domains"].push_back(std::move(entry));
  }
  return j;
}

DatasetManifest DatasetManifest::from_json(const nlohmann::json& j) {
  try {
    DatasetManifest m;
    m.source = j.value("source", "");
    m.seed = j.value("seed", std::uint64_t{0});
    m.config_hash = j.value("config_hash", "");
    m.benchmark_annotations = j.value("benchmark_annotations", "");
    if (const auto totals = j.find("totals"); totals != j.end()) {
      m.train_count = totals->value("N", std::size_t{0});
      m.test_count = totals->value("M", std::size_t{0});
    }
    for (const auto& entry : j.at("domains")) {
      DomainEntry d;
      d.tag = entry.at("tag").get<std::string>();
      d.origin = entry.value("origin", "imaging") == "external" ? DomainOrigin::kExternal : DomainOrigin::kImaging;
      if (entry.contains("spec")) d.spec = imaging::DegradationSpec::from_json(entry.at("spec"));
      d.external_dir = entry.value("external_dir", "");
      d.output_dir = entry.value("output_dir", "");
      d.annotation_file = entry.value("annotation_file", "");
      for (const auto& image : entry.value("images", nlohmann::json::array())) {
        // Plain ids are accepted for hand-written manifests.
        if (image.is_number_integer()) {
          const auto id = image.get<std::int64_t>();
          d.images.push_back({id, id, ""});
        } else {
          const auto source_id = image.at("source_id").get<std::int64_t>();
          d.images.push_back({source_id, image.value("benchmark_id", source_id), image.value("file", "")});
        }
      }
      for (const auto& gap : entry.value("gaps", nlohmann::json::array())) {
        d.gaps.push_back({gap.at("source_id").get<std::int64_t>(), gap.value("error", "")});
      }
      m.domains.push_back(std::move(d));
    }
    if (m.test_count == 0) m.test_count = m.total_images();
    m.validate();
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw DatasetError(std::string("malformed manifest: ") + e.what());
  }
}

void DatasetManifest::save(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw DatasetError("cannot write manifest " + path.string());
  out << to_json().dump(2) << '\n';
  if (!out) throw DatasetError("cannot write manifest " + path.string());
}

DatasetManifest DatasetManifest::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DatasetError("cannot open manifest " + path.string());
  try {
    return from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw DatasetError("manifest " + path.string() + ": " + e.what());
  }
}

}  // namespace odkit::dataset
