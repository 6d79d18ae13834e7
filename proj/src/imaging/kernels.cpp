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

#include "odkit/imaging/kernels.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

namespace odkit::imaging {

namespace {

struct Tap {
  int dx;
  int dy;
  double weight;
};

std::vector<Tap> nonzero_taps(const ConvolutionKernel& kernel) {
  std::vector<Tap> taps;
  const int r = kernel.size / 2;
  for (int dy = -r; dy <= r; ++dy) {
    for (int dx = -r; dx <= r; ++dx) {
      const double w = kernel.at(dx, dy);
      if (w != 0.0) taps.push_back({dx, dy, w});
    }
  }
  return taps;
}

ConvolutionKernel normalized(int size, std::vector<double> weights) {
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  for (double& w : weights) w /= total;
  return ConvolutionKernel{size, std::move(weights)};
}

}  // namespace

double ConvolutionKernel::sum() const { return std::accumulate(weights.begin(), weights.end(), 0.0); }

std::vector<double> gaussian_taps(double sigma) {
  if (sigma < 0.0) throw ParameterError("gaussian sigma must be >= 0");
  const int r = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> taps(static_cast<std::size_t>(2 * r + 1));
  if (r == 0) {
    taps[0] = 1.0;
    return taps;
  }
  double total = 0.0;
  for (int i = -r; i <= r; ++i) {
    const double w = std::exp(-(i * i) / (2.0 * sigma * sigma));
    taps[static_cast<std::size_t>(i + r)] = w;
    total += w;
  }
  for (double& w : taps) w /= total;
  return taps;
}

ConvolutionKernel ConvolutionKernel::gaussian(double sigma) {
  const auto taps = gaussian_taps(sigma);
  const int size = static_cast<int>(taps.size());
  std::vector<double> weights(taps.size() * taps.size());
  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      weights[static_cast<std::size_t>(y * size + x)] =
          taps[static_cast<std::size_t>(y)] * taps[static_cast<std::size_t>(x)];
    }
  }
  return normalized(size, std::move(weights));
}

ConvolutionKernel ConvolutionKernel::motion(int length, double angle_degrees) {
  if (length < 1) throw ParameterError("motion blur length must be >= 1");
  const double theta = angle_degrees * std::numbers::pi / 180.0;
  const double cx = std::cos(theta);
  const double cy = -std::sin(theta);  // image rows grow downwards
  const int r = length / 2;
  const int size = 2 * r + 1;
  std::vector<double> weights(static_cast<std::size_t>(size * size), 0.0);
  for (int i = 0; i < length; ++i) {
    const double t = i - (length - 1) / 2.0;
    const int dx = static_cast<int>(std::lround(t * cx));
    const int dy = static_cast<int>(std::lround(t * cy));
    weights[static_cast<std::size_t>((dy + r) * size + (dx + r))] += 1.0;
  }
  return normalized(size, std::move(weights));
}

ConvolutionKernel ConvolutionKernel::disk(double radius) {
  if (radius < 0.0) throw ParameterError("defocus radius must be >= 0");
  const int r = static_cast<int>(std::floor(radius));
  const int size = 2 * r + 1;
  std::vector<double> weights(static_cast<std::size_t>(size * size), 0.0);
  for (int dy = -r; dy <= r; ++dy) {
    for (int dx = -r; dx <= r; ++dx) {
      if (dx * dx + dy * dy <= radius * radius) weights[static_cast<std::size_t>((dy + r) * size + (dx + r))] = 1.0;
    }
  }
  return normalized(size, std::move(weights));
}

std::vector<float> convolve_plane(const std::vector<float>& plane, int width, int height,
                                  const ConvolutionKernel& kernel) {
  const auto taps = nonzero_taps(kernel);
  std::vector<float> out(plane.size());
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      double acc = 0.0;
      for (const Tap& t : taps) {
        const int sx = reflect_index(x + t.dx, width);
        const int sy = reflect_index(y + t.dy, height);
        acc += t.weight * plane[static_cast<std::size_t>(sy) * static_cast<std::size_t>(width) +
                                static_cast<std::size_t>(sx)];
      }
      out[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) + static_cast<std::size_t>(x)] =
          static_cast<float>(acc);
    }
  }
  return out;
}

FloatImage convolve(const FloatImage& image, const ConvolutionKernel& kernel) {
  const auto taps = nonzero_taps(kernel);
  const int r = kernel.size / 2;
  FloatImage out(image.width, image.height);
  const bool fits = image.width > 2 * r && image.height > 2 * r;
  for (int y = 0; y < image.height; ++y) {
    const bool row_interior = fits && y >= r && y < image.height - r;
    for (int x = 0; x < image.width; ++x) {
      const bool interior = row_interior && x >= r && x < image.width - r;
      double acc[3] = {0.0, 0.0, 0.0};
      for (const Tap& t : taps) {
        const int sx = interior ? x + t.dx : reflect_index(x + t.dx, image.width);
        const int sy = interior ? y + t.dy : reflect_index(y + t.dy, image.height);
        const float* px = &image.data[(static_cast<std::size_t>(sy) * static_cast<std::size_t>(image.width) +
                                       static_cast<std::size_t>(sx)) *
                                      3];
        acc[0] += t.weight * px[0];
        acc[1] += t.weight * px[1];
        acc[2] += t.weight * px[2];
      }
      for (int c = 0; c < 3; ++c) out.at(x, y, c) = static_cast<float>(acc[c]);
    }
  }
  return out;
}

FloatImage convolve_separable(const FloatImage& image, const std::vector<double>& taps) {
  const int r = static_cast<int>(taps.size()) / 2;
  FloatImage horizontal(image.width, image.height);
  for (int y = 0; y < image.height; ++y) {
    for (int x = 0; x < image.width; ++x) {
      double acc[3] = {0.0, 0.0, 0.0};
      for (int k = -r; k <= r; ++k) {
        const int sx = reflect_index(x + k, image.width);
        const double w = taps[static_cast<std::size_t>(k + r)];
        for (int c = 0; c < 3; ++c) acc[c] += w * image.at(sx, y, c);
      }
      for (int c = 0; c < 3; ++c) horizontal.at(x, y, c) = static_cast<float>(acc[c]);
    }
  }
  FloatImage out(image.width, image.height);
  for (int y = 0; y < image.height; ++y) {
    for (int x = 0; x < image.width; ++x) {
      double acc[3] = {0.0, 0.0, 0.0};
      for (int k = -r; k <= r; ++k) {
        const int sy = reflect_index(y + k, image.height);
        const double w = taps[static_cast<std::size_t>(k + r)];
        for (int c = 0; c < 3; ++c) acc[c] += w * horizontal.at(x, sy, c);
      }
      for (int c = 0; c < 3; ++c) out.at(x, y, c) = static_cast<float>(acc[c]);
    }
  }
  return out;
}

}  // namespace odkit::imaging
