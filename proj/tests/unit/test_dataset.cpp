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

#include <algorithm>
#include <set>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "odkit/dataset/amplify.hpp"
#include "odkit/dataset/annotations.hpp"
#include "odkit/dataset/categories.hpp"
#include "odkit/dataset/manifest.hpp"
#include "odkit/dataset/sampling.hpp"
#include "odkit/dataset/voc.hpp"
#include "odkit/imaging/io.hpp"

namespace odkit::dataset {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using testing::TempDir;

json tiny_document() {
  return json::parse(R"({
    "info": {"year": 2024},
    "categories": [
      {"id": 1, "name": "mug", "frequency": "f"},
      {"id": 2, "name": "kite", "frequency": "c"},
      {"id": 3, "name": "gourd", "frequency": "r"}
    ],
    "images": [
      {"id": 10, "width": 20, "height": 10, "file_name": "a.png", "neg_category_ids": [3], "not_exhaustive_category_ids": []},
      {"id": 11, "width": 20, "height": 10, "coco_url": "http://x.org/val2017/000000000011.jpg"}
    ],
    "annotations": [
      {"id": 1, "image_id": 10, "category_id": 1, "bbox": [2, 3, 4, 5], "area": 20, "segmentation": [[2, 3, 6, 3, 6, 8]]},
      {"id": 2, "image_id": 11, "category_id": 2, "bbox": [0.5, 0.25, 19.5, 9.75], "extra": {"k": [1, 2]}}
    ]
  })");
}

TEST(Categories, SplitIsPartition) {
  CategoryTable table({{1, "a", FrequencyBucket::kFrequent}, {2, "b", FrequencyBucket::kCommon},
                       {3, "c", FrequencyBucket::kRare}});
  const auto split = split_categories(table);
  EXPECT_EQ(split.base, (std::set<std::int64_t>{1, 2}));
  EXPECT_EQ(split.novel, (std::set<std::int64_t>{3}));
  EXPECT_EQ(split.open(), table.all_ids());
  const auto empty = split_categories(CategoryTable{});
  EXPECT_TRUE(empty.base.empty());
  EXPECT_TRUE(empty.novel.empty());
  EXPECT_THROW(CategoryTable({{1, "a", FrequencyBucket::kRare}, {1, "b", FrequencyBucket::kRare}}),
               std::invalid_argument);
}

TEST(Categories, BucketCodes) {
  EXPECT_EQ(parse_bucket("f"), FrequencyBucket::kFrequent);
  EXPECT_EQ(parse_bucket("c"), FrequencyBucket::kCommon);
  EXPECT_EQ(parse_bucket("r"), FrequencyBucket::kRare);
  EXPECT_FALSE(parse_bucket("x").has_value());
  EXPECT_EQ(bucket_code(FrequencyBucket::kRare), "r");
}

TEST(Annotations, ParsesSchema) {
  const auto data = parse_annotations(tiny_document());
  ASSERT_EQ(data.annotations.images.size(), 2u);
  EXPECT_EQ(data.annotations.images[0].file_name, "a.png");
  EXPECT_EQ(data.annotations.images[1].file_name, "000000000011.jpg");
  ASSERT_TRUE(data.annotations.images[0].neg_category_ids.has_value());
  EXPECT_EQ(*data.annotations.images[0].neg_category_ids, std::vector<std::int64_t>{3});
  EXPECT_FALSE(data.annotations.images[1].neg_category_ids.has_value());
  EXPECT_EQ(data.categories.size(), 3u);
  EXPECT_EQ(data.annotations.annotations[1].bbox, (Box{0.5, 0.25, 19.5, 9.75}));
  EXPECT_EQ(data.annotations.annotations[1].raw["extra"], json::parse(R"({"k": [1, 2]})"));
}

TEST(Annotations, EmptyFileIsEmptyDataset) {
  TempDir dir("empty-ann");
  testing::write_file(dir / "a.json", "");
  const auto data = load_annotations(dir / "a.json");
  EXPECT_TRUE(data.annotations.images.empty());
  EXPECT_TRUE(data.categories.empty());
}

TEST(Annotations, DistinctErrorClasses) {
  auto zero_width = tiny_document();
  zero_width["annotations"][0]["bbox"] = {2, 3, 0, 5};
  try {
    parse_annotations(zero_width);
    FAIL() << "expected InvalidBoxError";
  } catch (const InvalidBoxError& e) {
    EXPECT_EQ(e.annotation_id(), 1);
    EXPECT_NE(std::string(e.what()).find('1'), std::string::npos);
  }

  auto outside = tiny_document();
  outside["annotations"][0]["bbox"] = {15, 3, 10, 5};
  EXPECT_THROW(parse_annotations(outside), InvalidBoxError);

  auto within_tolerance = tiny_document();
  within_tolerance["annotations"][0]["bbox"] = {15, 3, 5.5, 5};
  EXPECT_NO_THROW(parse_annotations(within_tolerance));

  auto unknown = tiny_document();
  unknown["annotations"][0]["category_id"] = 99;
  try {
    parse_annotations(unknown);
    FAIL() << "expected UnknownCategoryError";
  } catch (const UnknownCategoryError& e) {
    EXPECT_EQ(e.category_id(), 99);
  }

  auto malformed = tiny_document();
  malformed.erase("images");
  EXPECT_THROW(parse_annotations(malformed), MalformedAnnotationsError);
  auto dangling = tiny_document();
  dangling["annotations"][0]["image_id"] = 5;
  EXPECT_THROW(parse_annotations(dangling), MalformedAnnotationsError);
  auto duplicate = tiny_document();
  duplicate["annotations"][1]["id"] = 1;
  EXPECT_THROW(parse_annotations(duplicate), MalformedAnnotationsError);

  TempDir dir("bad-json");
  testing::write_file(dir / "a.json", "{not json");
  EXPECT_THROW(load_annotations(dir / "a.json"), MalformedAnnotationsError);
}

TEST(Annotations, LvisRoundTripKeepsRawObjects) {
  const auto doc = tiny_document();
  const auto data = parse_annotations(doc);
  const auto out = to_lvis_json(data.annotations, data.raw_categories, data.info);
  EXPECT_EQ(out["annotations"], doc["annotations"]);
  EXPECT_EQ(out["images"], doc["images"]);
  EXPECT_EQ(out["categories"], doc["categories"]);
}

TEST(Annotations, ExcludeList) {
  TempDir dir("exclude");
  testing::write_file(dir / "ids.txt", "# manual cleaning\n11\n\n");
  const auto data = parse_annotations(tiny_document());
  const auto kept = exclude_images(data.annotations, read_id_list(dir / "ids.txt"));
  ASSERT_EQ(kept.images.size(), 1u);
  EXPECT_EQ(kept.images[0].id, 10);
  ASSERT_EQ(kept.annotations.size(), 1u);
  EXPECT_EQ(kept.annotations[0].id, 1);
}

AnnotationSet coverage_toy() {
  // image -> categories: 1:{1}, 2:{1,2}, 3:{3}, 4:{2}
  AnnotationSet set;
  const std::vector<std::pair<std::int64_t, std::vector<std::int64_t>>> layout = {
      {1, {1}}, {2, {1, 2}}, {3, {3}}, {4, {2}}};
  std::int64_t ann = 1;
  for (const auto& [id, cats] : layout) {
    ImageRecord img;
    img.id = id;
    img.width = 10;
    img.height = 10;
    img.file_name = std::to_string(id) + ".png";
    set.images.push_back(img);
    for (auto c : cats) set.annotations.push_back({ann++, id, Box{1, 1, 2, 2}, c, json::object()});
  }
  return set;
}

std::size_t coverage(const AnnotationSet& set, const std::vector<std::int64_t>& ids) {
  std::set<std::int64_t> cats;
  for (const auto& a : set.annotations) {
    if (std::find(ids.begin(), ids.end(), a.image_id) != ids.end()) cats.insert(a.category_id);
  }
  return cats.size();
}

TEST(Sampling, GreedyPrefixesAreMaximumCoverage) {
  const auto set = coverage_toy();
  const auto result = sample_for_domain(set, 4, 1);
  ASSERT_EQ(result.image_ids.size(), 4u);
  ASSERT_GE(result.greedy_count, 2u);
  // Brute force: best coverage achievable with k images, over all subsets.
  for (std::size_t k = 1; k <= result.greedy_count; ++k) {
    std::size_t best = 0;
    for (unsigned mask = 0; mask < 16; ++mask) {
      if (static_cast<std::size_t>(__builtin_popcount(mask)) != k) continue;
      std::vector<std::int64_t> ids;
      for (int b = 0; b < 4; ++b)
        if (mask & (1u << b)) ids.push_back(b + 1);
      best = std::max(best, coverage(set, ids));
    }
    const std::vector<std::int64_t> prefix(result.image_ids.begin(), result.image_ids.begin() + k);
    EXPECT_EQ(coverage(set, prefix), best) << "k=" << k;
  }
  // Ties go to the smaller id: image 2 (two categories) first, then 3.
  EXPECT_EQ(result.image_ids[0], 2);
  EXPECT_EQ(result.image_ids[1], 3);
  EXPECT_EQ(result.greedy_count, 2u);
}

TEST(Sampling, ClampsDeterministicAndCovers) {
  const auto set = coverage_toy();
  const auto all = sample_for_domain(set, 10, 3);
  EXPECT_TRUE(all.clamped);
  EXPECT_EQ(all.image_ids.size(), 4u);

  testing::TempDir dir("sampling");
  const auto doc = testing::make_lvis_document(60, 12, 5, 64, 48);
  const auto data = parse_annotations(doc);
  const auto a = sample_for_domain(data.annotations, 20, 9);
  const auto b = sample_for_domain(data.annotations, 20, 9);
  const auto c = sample_for_domain(data.annotations, 20, 10);
  EXPECT_EQ(a.image_ids, b.image_ids);
  EXPECT_NE(a.image_ids, c.image_ids);
  std::set<std::int64_t> unique(a.image_ids.begin(), a.image_ids.end());
  EXPECT_EQ(unique.size(), 20u);
  std::set<std::int64_t> source_cats;
  for (const auto& ann : data.annotations.annotations) source_cats.insert(ann.category_id);
  EXPECT_EQ(coverage(data.annotations, a.image_ids), source_cats.size());
}

TEST(Manifest, LimitsAndJsonRoundTrip) {
  DatasetManifest m;
  m.source = "src.json";
  m.seed = 5;
  m.config_hash = "abc";
  m.train_count = 3;
  DomainEntry haze;
  haze.tag = "haze-moderate";
  haze.spec = imaging::DegradationSpec{imaging::DegradationKind::kHaze, {{"m", 0.05}}, 0, "haze-moderate"};
  haze.output_dir = "haze-moderate";
  haze.annotation_file = "haze-moderate/annotations.json";
  haze.images = {{1, 1001, "haze-moderate/images/1.png"}, {2, 1002, "haze-moderate/images/2.png"}};
  haze.gaps = {{3, "boom"}};
  m.domains.push_back(haze);
  DomainEntry style;
  style.tag = "sketch";
  style.origin = DomainOrigin::kExternal;
  style.external_dir = "/data/sketch";
  m.domains.push_back(style);
  m.test_count = m.total_images();
  EXPECT_EQ(m.total_images(), 2u);
  EXPECT_EQ(m.total_gaps(), 1u);
  EXPECT_NO_THROW(m.validate());

  const auto back = DatasetManifest::from_json(m.to_json());
  EXPECT_EQ(back.to_json(), m.to_json());
  EXPECT_EQ(back.domains[0].spec, haze.spec);
  EXPECT_EQ(back.domains[1].origin, DomainOrigin::kExternal);

  auto dup = m;
  dup.domains[1].tag = "haze-moderate";
  EXPECT_THROW(dup.validate(), DatasetError);
  DatasetManifest many;
  for (int i = 0; i < 10; ++i) {
    DomainEntry d;
    d.tag = "d" + std::to_string(i);
    d.spec = imaging::DegradationSpec{imaging::DegradationKind::kHaze, {{"m", 0.01 * i}}, 0, {}};
    many.domains.push_back(d);
  }
  EXPECT_THROW(many.validate(), DatasetError);
}

TEST(Amplify, IdentityDomainIsByteEqual) {
  TempDir dir("amplify-identity");
  const auto fixture = testing::write_lvis_fixture(dir.path(), 6, 4, 3);
  const auto data = load_annotations(fixture.annotations);
  AmplifyOptions options;
  options.image_root = fixture.image_root;
  options.out_dir = dir / "out";
  options.seed = 1;
  const std::vector<DomainJob> jobs = {
      {"clean", imaging::DegradationSpec{imaging::DegradationKind::kHaze, {{"m", 0.0}}, 0, {}}, std::nullopt}};
  const auto manifest = amplify(data, jobs, options);
  ASSERT_EQ(manifest.total_images(), 6u);
  for (const auto& image : fixture.document["images"]) {
    const auto name = image["file_name"].get<std::string>();
    EXPECT_EQ(testing::read_file(dir / "out" / "clean" / "images" / name), testing::read_file(fixture.image_root / name));
  }
  const auto out_doc = json::parse(testing::read_file(dir / "out" / "clean" / "annotations.json"));
  EXPECT_EQ(out_doc["annotations"], fixture.document["annotations"]);
  EXPECT_EQ(out_doc["categories"], fixture.document["categories"]);
}

TEST(Amplify, PresetsManifestTotalsAndFiles) {
  TempDir dir("amplify-presets");
  const auto fixture = testing::write_lvis_fixture(dir.path(), 8, 5, 4);
  const auto data = load_annotations(fixture.annotations);
  const auto presets = imaging::PresetRegistry::builtin();
  AmplifyOptions options;
  options.image_root = fixture.image_root;
  options.out_dir = dir / "out";
  options.seed = 2;
  options.per_domain_count = 5;
  const std::vector<DomainJob> jobs = {{"haze-moderate", *presets.find("haze-moderate"), std::nullopt},
                                       {"haze-severe", *presets.find("haze-severe"), 3}};
  const auto manifest = amplify(data, jobs, options);
  ASSERT_EQ(manifest.domains.size(), 2u);
  EXPECT_EQ(manifest.domains[0].tag, "haze-moderate");
  EXPECT_EQ(manifest.domains[1].tag, "haze-severe");
  EXPECT_DOUBLE_EQ(manifest.domains[0].spec->params.at("m"), 0.05);
  EXPECT_DOUBLE_EQ(manifest.domains[1].spec->params.at("m"), 0.08);
  EXPECT_EQ(manifest.domains[0].images.size(), 5u);
  EXPECT_EQ(manifest.domains[1].images.size(), 3u);
  EXPECT_EQ(manifest.test_count, 8u);
  EXPECT_EQ(manifest.train_count, 8u);
  for (const auto& d : manifest.domains)
    for (const auto& img : d.images) EXPECT_TRUE(fs::exists(dir / "out" / img.file)) << img.file;

  const auto saved = DatasetManifest::load(dir / "out" / "manifest.json");
  EXPECT_EQ(saved.to_json(), manifest.to_json());

  const auto bench = load_annotations(dir / "out" / manifest.benchmark_annotations);
  EXPECT_EQ(bench.annotations.images.size(), 8u);
  std::set<std::int64_t> ids;
  for (const auto& d : manifest.domains)
    for (const auto& img : d.images) ids.insert(img.benchmark_id);
  EXPECT_EQ(ids.size(), 8u);
}

TEST(Amplify, WorkerCountDoesNotChangeOutputs) {
  TempDir dir("amplify-workers");
  const auto fixture = testing::write_lvis_fixture(dir.path(), 6, 4, 8);
  const auto data = load_annotations(fixture.annotations);
  const std::vector<DomainJob> jobs = {
      {"noise", imaging::DegradationSpec{imaging::DegradationKind::kGaussianNoise, {{"k", 0.04}}, 0, {}}, std::nullopt},
      {"rain", imaging::DegradationSpec{imaging::DegradationKind::kRain, {{"intensity", 0.6}}, 0, {}}, std::nullopt}};
  std::vector<std::string> snapshots;
  for (unsigned workers : {1u, 4u}) {
    AmplifyOptions options;
    options.image_root = fixture.image_root;
    options.out_dir = dir / ("out" + std::to_string(workers));
    options.seed = 77;
    options.workers = workers;
    amplify(data, jobs, options);
    std::string all;
    for (const auto& tag : {"noise", "rain"}) {
      for (const auto& image : fixture.document["images"]) {
        all += testing::read_file(options.out_dir / tag / "images" / image["file_name"].get<std::string>());
      }
    }
    all += testing::read_file(options.out_dir / "manifest.json");
    snapshots.push_back(all);
  }
  EXPECT_EQ(snapshots[0], snapshots[1]);
}

TEST(Amplify, FailedImagesBecomeGaps) {
  TempDir dir("amplify-gaps");
  const auto fixture = testing::write_lvis_fixture(dir.path(), 4, 3, 6);
  const auto victim = fixture.document["images"][1]["file_name"].get<std::string>();
  fs::remove(fixture.image_root / victim);
  const auto data = load_annotations(fixture.annotations);
  AmplifyOptions options;
  options.image_root = fixture.image_root;
  options.out_dir = dir / "out";
  const std::vector<DomainJob> jobs = {
      {"blur", imaging::DegradationSpec{imaging::DegradationKind::kGaussianBlur, {{"sigma", 1.0}}, 0, {}}, std::nullopt}};
  const auto manifest = amplify(data, jobs, options);
  EXPECT_EQ(manifest.total_images(), 3u);
  ASSERT_EQ(manifest.total_gaps(), 1u);
  EXPECT_EQ(manifest.domains[0].gaps[0].source_id, fixture.document["images"][1]["id"].get<std::int64_t>());
}

TEST(Amplify, ExternalIngestByStem) {
  TempDir dir("amplify-external");
  const auto fixture = testing::write_lvis_fixture(dir.path(), 3, 3, 2, 32, 24);
  fs::create_directories(dir / "sketch");
  for (const auto& image : fixture.document["images"]) {
    const auto stem = fs::path(image["file_name"].get<std::string>()).stem().string();
    imaging::write_image(dir / "sketch" / (stem + ".png"), testing::checker_image(32, 24, 4));
  }
  const auto data = load_annotations(fixture.annotations);
  AmplifyOptions options;
  options.image_root = fixture.image_root;
  options.out_dir = dir / "out";
  const auto manifest = amplify(data, {{"sketch", ExternalIngest{dir / "sketch"}, std::nullopt}}, options);
  EXPECT_EQ(manifest.total_images(), 3u);
  EXPECT_EQ(manifest.domains[0].origin, DomainOrigin::kExternal);
  const auto first = fixture.document["images"][0]["file_name"].get<std::string>();
  EXPECT_EQ(imaging::read_image(dir / "out" / "sketch" / "images" / first), testing::checker_image(32, 24, 4));
}

TEST(Amplify, RejectsDuplicateTagsAndUnwritableOutput) {
  TempDir dir("amplify-errors");
  const auto fixture = testing::write_lvis_fixture(dir.path(), 2, 2, 2);
  const auto data = load_annotations(fixture.annotations);
  AmplifyOptions options;
  options.image_root = fixture.image_root;
  options.out_dir = dir / "out";
  const imaging::DegradationSpec spec{imaging::DegradationKind::kHaze, {{"m", 0.05}}, 0, {}};
  EXPECT_THROW(amplify(data, {{"a", spec, {}}, {"a", spec, {}}}, options), DatasetError);
  testing::write_file(dir / "blocker", "x");
  options.out_dir = dir / "blocker" / "sub";
  EXPECT_THROW(amplify(data, {{"a", spec, {}}}, options), DatasetError);
}

TEST(Voc, CoordinatesAndRoundTrip) {
  TempDir dir("voc");
  const auto data = parse_annotations(tiny_document());
  EXPECT_EQ(export_voc(AnnotationSet{}, data.categories, dir / "empty"), 0u);
  EXPECT_EQ(export_voc(data.annotations, data.categories, dir / "a"), 2u);
  const auto xml = testing::read_file(dir / "a" / "a.xml");
  EXPECT_NE(xml.find("<xmin>2</xmin>"), std::string::npos);
  EXPECT_NE(xml.find("<ymin>3</ymin>"), std::string::npos);
  EXPECT_NE(xml.find("<xmax>6</xmax>"), std::string::npos);
  EXPECT_NE(xml.find("<ymax>8</ymax>"), std::string::npos);
  EXPECT_NE(xml.find("<name>mug</name>"), std::string::npos);

  const auto loaded = load_voc(dir / "a", data.categories);
  ASSERT_EQ(loaded.annotations.size(), 2u);
  export_voc(loaded, data.categories, dir / "b");
  for (const auto& name : {"a.xml", "000000000011.xml"}) {
    EXPECT_EQ(testing::read_file(dir / "a" / name), testing::read_file(dir / "b" / name)) << name;
  }
}

}  // namespace
}  // namespace odkit::dataset
