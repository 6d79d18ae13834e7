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

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace odkit::imaging {

/// Raised when a degradation parameter falls outside its documented domain.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// 8-bit interleaved RGB raster, row-major.
class Image {
 public:
  static constexpr int kChannels = 3;

  Image() = default;
  Image(int width, int height, std::uint8_t fill = 0);
  Image(int width, int height, std::vector<std::uint8_t> pixels);

  int width() const { return width_; }
  int height() const { return height_; }
  bool empty() const { return pixels_.empty(); }
  std::size_t sample_count() const { return pixels_.size(); }

  std::span<const std::uint8_t> pixels() const { return pixels_; }
  std::span<std::uint8_t> pixels() { return pixels_; }

  std::uint8_t at(int x, int y, int c) const { return pixels_[index(x, y, c)]; }
  std::uint8_t& at(int x, int y, int c) { return pixels_[index(x, y, c)]; }

  /// Sample mapped to [0, 1].
  double normalized(int x, int y, int c) const { return at(x, y, c) / 255.0; }

  friend bool operator==(const Image&, const Image&) = default;

 private:
  std::size_t index(int x, int y, int c) const {
    return (static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x)) *
               kChannels +
           static_cast<std::size_t>(c);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> pixels_;
};

/// Working-precision copy of an Image on the normalized [0, 1] scale.
/// Kernels compute here and quantize exactly once at the end.
struct FloatImage {
  int width = 0;
  int height = 0;
  std::vector<float> data;  // interleaved, 3 channels

  FloatImage() = default;
  FloatImage(int w, int h, float fill = 0.0f)
      : width(w), height(h), data(static_cast<std::size_t>(w) * static_cast<std::size_t>(h) * 3, fill) {}

  float& at(int x, int y, int c) {
    return data[(static_cast<std::size_t>(y) * static_cast<std::size_t>(width) + static_cast<std::size_t>(x)) * 3 +
                static_cast<std::size_t>(c)];
  }
  float at(int x, int y, int c) const {
    return data[(static_cast<std::size_t>(y) * static_cast<std::size_t>(width) + static_cast<std::size_t>(x)) * 3 +
                static_cast<std::size_t>(c)];
  }
};

FloatImage to_float(const Image& image);

/// Clamps to [0, 1] and converts with round-half-up: floor(255 v + 0.5).
Image quantize(const FloatImage& image);

std::uint8_t quantize_sample(double normalized);

/// Reflect-101 border index (mirror without repeating the edge sample).
int reflect_index(int index, int extent);

}  // namespace odkit::imaging
