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

#include "odkit/imaging/image.hpp"

#include <algorithm>
#include <cmath>

namespace odkit::imaging {

namespace {

std::size_t checked_sample_count(int width, int height) {
  if (width < 0 || height < 0) throw ParameterError("Image: negative dimensions");
  return static_cast<std::size_t>(width) * static_cast<std::size_t>(height) * Image::kChannels;
}

}  // namespace

Image::Image(int width, int height, std::uint8_t fill)
    : width_(width), height_(height), pixels_(checked_sample_count(width, height), fill) {}

Image::Image(int width, int height, std::vector<std::uint8_t> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  if (pixels_.size() != checked_sample_count(width, height)) {
    throw ParameterError("Image: pixel buffer length must equal width * height * 3");
  }
}

FloatImage to_float(const Image& image) {
  FloatImage out(image.width(), image.height());
  const auto src = image.pixels();
  for (std::size_t i = 0; i < src.size(); ++i) out.data[i] = static_cast<float>(src[i] / 255.0);
  return out;
}

std::uint8_t quantize_sample(double normalized) {
  if (!(normalized > 0.0)) return 0;  // also maps NaN to 0
  if (normalized >= 1.0) return 255;
  return static_cast<std::uint8_t>(std::floor(normalized * 255.0 + 0.5));
}

Image quantize(const FloatImage& image) {
  std::vector<std::uint8_t> pixels(image.data.size());
  std::transform(image.data.begin(), image.data.end(), pixels.begin(),
                 [](float v) { return quantize_sample(v); });
  return Image(image.width, image.height, std::move(pixels));
}

int reflect_index(int index, int extent) {
  if (extent <= 1) return 0;
  const int period = 2 * (extent - 1);
  index %= period;
  if (index < 0) index += period;
  return index < extent ? index : period - index;
}

}  // namespace odkit::imaging
