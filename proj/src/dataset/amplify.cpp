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

#include "odkit/dataset/amplify.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <unordered_map>

#include "odkit/common/hash.hpp"
#include "odkit/common/logging.hpp"
#include "odkit/common/parallel.hpp"
#include "odkit/dataset/sampling.hpp"
#include "odkit/imaging/io.hpp"

namespace odkit::dataset {

namespace fs = std::filesystem;

std::uint64_t image_seed(std::uint64_t global_seed, std::int64_t image_id, const std::string& domain_tag) {
  return derive_seed(global_seed, static_cast<std::uint64_t>(image_id), fnv1a64(domain_tag));
}

std::size_t equal_split(std::size_t total, std::size_t domains) { return domains == 0 ? 0 : total / domains; }

namespace {

constexpr std::uint64_t kSamplingSalt = 0x73616d706c696e67ULL;  // "sampling"

struct WorkUnit {
  std::size_t domain;
  std::int64_t image_id;
};

std::string output_stem(const ImageRecord& image) {
  const fs::path stem = fs::path(image.file_name).stem();
  return stem.empty() ? std::to_string(image.id) : stem.string();
}

std::string lower_extension(const fs::path& path) {
  auto ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext;
}

fs::path find_external(const fs::path& directory, const std::string& stem) {
  for (const char* ext : {".png", ".jpg", ".jpeg", ".PNG", ".JPG", ".JPEG"}) {
    fs::path candidate = directory / (stem + ext);
    if (fs::exists(candidate)) return candidate;
  }
  throw imaging::ImageIoError("no external image for '" + stem + "' in " + directory.string());
}

void write_json(const fs::path& path, const nlohmann::json& document) {
  std::ofstream out(path);
  if (!out) throw DatasetError("cannot write " + path.string());
  out << document.dump() << '\n';
  if (!out) throw DatasetError("cannot write " + path.string());
}

void ensure_writable_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw DatasetError("cannot create output directory " + dir.string());
  const fs::path probe = dir / ".odkit-write-probe";
  {
    std::ofstream out(probe);
    if (!out) throw DatasetError("output directory is not writable: " + dir.string());
  }
  fs::remove(probe, ec);
}

void validate_jobs(const std::vector<DomainJob>& jobs) {
  std::set<std::string> tags;
  std::size_t imaging = 0;
  std::size_t external = 0;
  for (const auto& job : jobs) {
    if (job.tag.empty() || job.tag.find_first_of("/\\") != std::string::npos) {
      throw DatasetError("invalid domain tag '" + job.tag + "'");
    }
    if (!tags.insert(job.tag).second) throw DatasetError("duplicate domain tag '" + job.tag + "'");
    if (const auto* spec = std::get_if<imaging::DegradationSpec>(&job.source)) {
      spec->validate();
      ++imaging;
    } else {
      ++external;
    }
  }
  if (imaging > kMaxImagingDomains) throw DatasetError("more than 9 imaging-condition domains");
  if (external > kMaxStyleDomains) throw DatasetError("more than 9 style domains");
}

std::int64_t id_stride(const AnnotationSet& annotations) {
  std::int64_t max_id = 0;
  for (const auto& image : annotations.images) max_id = std::max(max_id, image.id);
  for (const auto& ann : annotations.annotations) max_id = std::max(max_id, ann.id);
  std::int64_t stride = 10;
  while (stride <= max_id) stride *= 10;
  return stride;
}

}  // namespace

DatasetManifest amplify(const Dataset& dataset, const std::vector<DomainJob>& jobs, const AmplifyOptions& options) {
  validate_jobs(jobs);
  ensure_writable_dir(options.out_dir);

  const AnnotationSet& source = dataset.annotations;
  std::unordered_map<std::int64_t, const ImageRecord*> images;
  for (const auto& image : source.images) images.emplace(image.id, &image);
  const auto by_image = source.annotations_by_image();
  const std::int64_t stride = id_stride(source);

  DatasetManifest manifest;
  manifest.source = options.source_ref;
  manifest.seed = options.seed;
  manifest.config_hash = options.config_hash;
  manifest.train_count = source.images.size();
  manifest.benchmark_annotations = "benchmark.json";

  std::vector<std::vector<std::int64_t>> selections(jobs.size());
  std::vector<WorkUnit> units;
  for (std::size_t d = 0; d < jobs.size(); ++d) {
    const DomainJob& job = jobs[d];
    ensure_writable_dir(options.out_dir / job.tag / "images");
    const std::size_t requested = job.count.value_or(options.per_domain_count);
    if (!source.images.empty()) {
      const std::size_t n = requested == 0 ? source.images.size() : requested;
      auto sample = sample_for_domain(source, n, derive_seed(options.seed, fnv1a64(job.tag), kSamplingSalt));
      selections[d] = std::move(sample.image_ids);
      std::sort(selections[d].begin(), selections[d].end());
    }
    for (const auto id : selections[d]) units.push_back({d, id});
  }

  std::vector<std::string> errors(units.size());
  parallel_for(units.size(), options.workers, [&](std::size_t u) {
    const WorkUnit& unit = units[u];
    const DomainJob& job = jobs[unit.domain];
    const ImageRecord& record = *images.at(unit.image_id);
    const fs::path target = options.out_dir / job.tag / "images" / (output_stem(record) + ".png");
    try {
      imaging::Image result;
      if (const auto* spec = std::get_if<imaging::DegradationSpec>(&job.source)) {
        const fs::path source_file = options.image_root / record.file_name;
        const imaging::Image input = imaging::read_image(source_file);
        if (input.width() != record.width || input.height() != record.height) {
          throw imaging::ImageIoError("raster size differs from annotation record");
        }
        if (spec->is_identity() && lower_extension(source_file) == ".png") {
          fs::copy_file(source_file, target, fs::copy_options::overwrite_existing);
          return;
        }
        imaging::DegradationSpec per_image = *spec;
        per_image.seed = image_seed(options.seed, record.id, job.tag);
        result = imaging::apply(input, per_image);
      } else {
        const auto& ingest = std::get<ExternalIngest>(job.source);
        result = imaging::read_image(find_external(ingest.directory, output_stem(record)));
        if (result.width() != record.width || result.height() != record.height) {
          throw imaging::ImageIoError("external image size differs from source");
        }
      }
      imaging::write_image(target, result);
    } catch (const std::exception& e) {
      errors[u] = e.what();
      if (errors[u].empty()) errors[u] = "unknown failure";
      log().error("domain={} image_id={} error=\"{}\"", job.tag, record.id, errors[u]);
    }
  });

  nlohmann::json info = dataset.info.is_object() ? dataset.info : nlohmann::json::object();
  info["provenance"] = {{"config_hash", options.config_hash}, {"seed", options.seed}};
  nlohmann::json benchmark = {{"info", info},
                              {"images", nlohmann::json::array()},
                              {"annotations", nlohmann::json::array()},
                              {"categories", dataset.raw_categories}};
  std::size_t unit_index = 0;
  for (std::size_t d = 0; d < jobs.size(); ++d) {
    const DomainJob& job = jobs[d];
    const std::int64_t offset = static_cast<std::int64_t>(d + 1) * stride;
    DomainEntry entry;
    entry.tag = job.tag;
    entry.output_dir = job.tag;
    entry.annotation_file = job.tag + "/annotations.json";
    if (const auto* spec = std::get_if<imaging::DegradationSpec>(&job.source)) {
      entry.origin = DomainOrigin::kImaging;
      entry.spec = *spec;
    } else {
      entry.origin = DomainOrigin::kExternal;
      entry.external_dir = std::get<ExternalIngest>(job.source).directory.string();
    }

    nlohmann::json domain_doc = {{"info", info},
                                 {"images", nlohmann::json::array()},
                                 {"annotations", nlohmann::json::array()},
                                 {"categories", dataset.raw_categories}};
    for (const auto id : selections[d]) {
      const std::string& error = errors[unit_index++];
      if (!error.empty()) {
        entry.gaps.push_back({id, error});
        continue;
      }
      const ImageRecord& record = *images.at(id);
      const std::string file_name = output_stem(record) + ".png";
      entry.images.push_back({id, offset + id, job.tag + "/images/" + file_name});

      nlohmann::json image = record.raw;
      image["file_name"] = "images/" + file_name;
      domain_doc["images"].push_back(image);
      image["id"] = offset + id;
      image["file_name"] = job.tag + "/images/" + file_name;
      benchmark["images"].push_back(std::move(image));

      if (const auto it = by_image.find(id); it != by_image.end()) {
        for (const auto a : it->second) {
          const Annotation& ann = source.annotations[a];
          domain_doc["annotations"].push_back(ann.raw);
          nlohmann::json renumbered = ann.raw;
          renumbered["id"] = offset + ann.id;
          renumbered["image_id"] = offset + id;
          benchmark["annotations"].push_back(std::move(renumbered));
        }
      }
    }
    write_json(options.out_dir / entry.annotation_file, domain_doc);
    log().info("domain={} images={} gaps={}", entry.tag, entry.images.size(), entry.gaps.size());
    manifest.domains.push_back(std::move(entry));
  }
  write_json(options.out_dir / manifest.benchmark_annotations, benchmark);

  manifest.test_count = manifest.total_images();
  manifest.validate();
  manifest.save(options.out_dir / "manifest.json");
  return manifest;
}

}  // namespace odkit::dataset
