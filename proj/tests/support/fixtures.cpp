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

#include "fixtures.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <stdexcept>

#include <unistd.h>

#include "odkit/common/rng.hpp"
#include "odkit/imaging/io.hpp"

namespace odkit::testing {

namespace fs = std::filesystem;

TempDir::TempDir(const std::string& name) {
  static std::atomic<int> counter{0};
  path_ = fs::temp_directory_path() /
          ("odkit-" + name + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
  fs::remove_all(path_);
  fs::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

imaging::Image constant_image(int width, int height, std::uint8_t value) { return imaging::Image(width, height, value); }

imaging::Image gradient_image(int width, int height) {
  imaging::Image img(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      for (int c = 0; c < 3; ++c) {
        const int v = (x * 255 / std::max(1, width - 1) + y * 127 / std::max(1, height - 1) + 40 * c) % 256;
        img.at(x, y, c) = static_cast<std::uint8_t>(v);
      }
    }
  }
  return img;
}

imaging::Image textured_image(int width, int height, std::uint64_t seed) {
  Rng rng(seed);
  constexpr int kBlock = 4;
  const int bw = (width + kBlock - 1) / kBlock;
  const int bh = (height + kBlock - 1) / kBlock;
  std::vector<std::uint8_t> blocks(static_cast<std::size_t>(bw * bh * 3));
  for (auto& b : blocks) b = static_cast<std::uint8_t>(30 + rng.below(196));
  imaging::Image img(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      for (int c = 0; c < 3; ++c) {
        const int base = blocks[static_cast<std::size_t>(((y / kBlock) * bw + x / kBlock) * 3 + c)];
        img.at(x, y, c) = static_cast<std::uint8_t>(std::clamp(base + (x + y) % 7 - 3, 0, 255));
      }
    }
  }
  return img;
}

imaging::Image checker_image(int width, int height, int cell) {
  imaging::Image img(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const std::uint8_t v = ((x / cell + y / cell) % 2 == 0) ? 60 : 190;
      for (int c = 0; c < 3; ++c) img.at(x, y, c) = v;
    }
  }
  return img;
}

nlohmann::json make_lvis_document(std::size_t images, std::size_t categories, std::uint64_t seed, int width,
                                  int height) {
  Rng rng(seed);
  static constexpr const char* kBuckets[] = {"f", "c", "r"};
  nlohmann::json cats = nlohmann::json::array();
  for (std::size_t c = 0; c < categories; ++c) {
    cats.push_back({{"id", c + 1},
                    {"name", "category_" + std::to_string(c + 1)},
                    {"synset", "thing.n." + std::to_string(c + 1)},
                    {"frequency", kBuckets[c % 3]},
                    {"image_count", 0},
                    {"instance_count", 0}});
  }
  nlohmann::json imgs = nlohmann::json::array();
  nlohmann::json anns = nlohmann::json::array();
  std::int64_t ann_id = 1;
  for (std::size_t i = 0; i < images; ++i) {
    const std::int64_t image_id = static_cast<std::int64_t>(i) * 3 + 7;
    char name[32];
    std::snprintf(name, sizeof(name), "%012lld.png", static_cast<long long>(image_id));
    const auto boxes = 1 + rng.below(3);
    std::vector<std::int64_t> present;
    for (std::uint64_t b = 0; b < boxes; ++b) {
      const double w = 4.0 + std::round(rng.uniform() * (width / 2.0) * 100.0) / 100.0;
      const double h = 4.0 + std::round(rng.uniform() * (height / 2.0) * 100.0) / 100.0;
      const double x = std::round(rng.uniform() * (width - w) * 100.0) / 100.0;
      const double y = std::round(rng.uniform() * (height - h) * 100.0) / 100.0;
      const auto category = static_cast<std::int64_t>(1 + rng.below(categories));
      present.push_back(category);
      anns.push_back({{"id", ann_id++},
                      {"image_id", image_id},
                      {"category_id", category},
                      {"bbox", {x, y, w, h}},
                      {"area", w * h},
                      {"segmentation", {{x, y, x + w, y, x + w, y + h, x, y + h}}}});
    }
    std::vector<std::int64_t> neg;
    std::vector<std::int64_t> not_exhaustive;
    for (std::size_t c = 1; c <= categories; ++c) {
      const auto id = static_cast<std::int64_t>(c);
      if (std::find(present.begin(), present.end(), id) != present.end()) {
        if (rng.uniform() < 0.2) not_exhaustive.push_back(id);
      } else if (rng.uniform() < 0.5) {
        neg.push_back(id);
      }
    }
    imgs.push_back({{"id", image_id},
                    {"width", width},
                    {"height", height},
                    {"file_name", name},
                    {"coco_url", std::string("http://images.example.org/val/") + name},
                    {"neg_category_ids", neg},
                    {"not_exhaustive_category_ids", not_exhaustive}});
  }
  return {{"info", {{"description", "synthetic fixture"}}},
          {"images", imgs},
          {"annotations", anns},
          {"categories", cats}};
}

LvisFixture write_lvis_fixture(const fs::path& dir, std::size_t images, std::size_t categories, std::uint64_t seed,
                               int width, int height) {
  LvisFixture f;
  f.document = make_lvis_document(images, categories, seed, width, height);
  f.image_root = dir / "images";
  fs::create_directories(f.image_root);
  for (const auto& image : f.document["images"]) {
    imaging::write_image(f.image_root / image["file_name"].get<std::string>(),
                         textured_image(width, height, seed ^ image["id"].get<std::uint64_t>()));
  }
  f.annotations = dir / "annotations.json";
  write_file(f.annotations, f.document.dump());
  return f;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

fs::path test_data_dir() { return ODKIT_TEST_DATA_DIR; }

}  // namespace odkit::testing
