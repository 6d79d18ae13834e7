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
#include <string>

#include <nlohmann/json.hpp>

#include "odkit/imaging/image.hpp"

namespace odkit::testing {

/// Scratch directory removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& name);
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& child) const { return path_ / child; }

 private:
  std::filesystem::path path_;
};

imaging::Image constant_image(int width, int height, std::uint8_t value);
/// Smooth diagonal ramp with a different phase per channel.
imaging::Image gradient_image(int width, int height);
/// Seeded blocky texture; never constant.
imaging::Image textured_image(int width, int height, std::uint64_t seed);
/// Checkerboard of `cell`-pixel squares in two gray levels.
imaging::Image checker_image(int width, int height, int cell);

/// LVIS-schema document: `categories` categories cycling f/c/r, every image
/// carrying 1-3 boxes with polygon segmentations, neg/not-exhaustive lists
/// and float coordinates.
nlohmann::json make_lvis_document(std::size_t images, std::size_t categories, std::uint64_t seed, int width,
                                  int height);

struct LvisFixture {
  std::filesystem::path annotations;
  std::filesystem::path image_root;
  nlohmann::json document;
};

/// Writes the document and one PNG per image (textured content).
LvisFixture write_lvis_fixture(const std::filesystem::path& dir, std::size_t images, std::size_t categories,
                               std::uint64_t seed, int width = 64, int height = 48);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& text);

/// Root of the source tree's tests/data directory.
std::filesystem::path test_data_dir();

}  // namespace odkit::testing
