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
#include <stdexcept>

#include "odkit/imaging/image.hpp"

namespace odkit::imaging {

class ImageIoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Decodes PNG or JPEG (any format OpenCV recognizes) into RGB.
Image read_image(const std::filesystem::path& path);

/// Encoding follows the extension (.png, .jpg/.jpeg). PNG output is lossless.
void write_image(const std::filesystem::path& path, const Image& image);

}  // namespace odkit::imaging
