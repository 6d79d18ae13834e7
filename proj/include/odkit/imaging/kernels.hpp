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

#include <vector>

#include "odkit/imaging/image.hpp"

namespace odkit::imaging {

/// Square convolution kernel with odd size, row-major weights.
struct ConvolutionKernel {
  int size = 1;
  std::vector<double> weights{1.0};

  double at(int dx, int dy) const {
    const int r = size / 2;
    return weights[static_cast<std::size_t>((dy + r) * size + (dx + r))];
  }
  double sum() const;

  /// Normalized discrete Gaussian, size 2*ceil(3 sigma)+1.
  static ConvolutionKernel gaussian(double sigma);
  /// Normalized 1-pixel-wide line of `length` samples at `angle_degrees`
  /// (counter-clockwise from the +x axis, image y pointing down).
  static ConvolutionKernel motion(int length, double angle_degrees);
  /// Normalized disk: cells whose center lies within `radius` of the origin.
  static ConvolutionKernel disk(double radius);
};

/// Normalized 1-D Gaussian taps for offsets -r..r, r = ceil(3 sigma).
std::vector<double> gaussian_taps(double sigma);

/// 2-D convolution with reflect-101 borders.
FloatImage convolve(const FloatImage& image, const ConvolutionKernel& kernel);

/// Horizontal then vertical pass with the same odd-length 1-D taps.
FloatImage convolve_separable(const FloatImage& image, const std::vector<double>& taps);

/// Single-plane variant used for masks.
std::vector<float> convolve_plane(const std::vector<float>& plane, int width, int height,
                                  const ConvolutionKernel& kernel);

}  // namespace odkit::imaging
