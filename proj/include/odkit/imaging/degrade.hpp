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
#include <variant>
#include <vector>

#include "odkit/imaging/image.hpp"

namespace odkit::imaging {

struct ConstantDepth {
  double depth = 10.0;
};

/// Linear pseudo-depth from `far_depth` at the top row to `near_depth` at
/// the bottom row.
struct VerticalGradientDepth {
  double near_depth = 5.0;
  double far_depth = 15.0;
};

using DepthModel = std::variant<ConstantDepth, VerticalGradientDepth>;

/// Atmospheric scattering: out = in t + airlight (1 - t), t = exp(-m d).
Image apply_haze(const Image& image, double scattering, double airlight = 1.0,
                 const DepthModel& depth = ConstantDepth{});

/// out = in^gamma on the normalized scale.
Image apply_gamma(const Image& image, double gamma);

/// Catmull-Rom bicubic downsample by `factor`, then upsample back to the
/// original size.
Image apply_low_resolution(const Image& image, int factor);

/// Additive i.i.d. Gaussian noise with variance `variance` on the [0, 1]
/// scale.
Image apply_gaussian_noise(const Image& image, double variance, std::uint64_t seed);

Image apply_gaussian_blur(const Image& image, double sigma);

/// Each pixel independently becomes black or white (all channels) with
/// probability `density`.
Image apply_salt_pepper(const Image& image, double density, std::uint64_t seed);

Image apply_motion_blur(const Image& image, int length, double angle_degrees);

/// Circular averaging filter.
Image apply_defocus(const Image& image, double radius);

struct RainParams {
  double intensity = 0.6;
  int streak_length = 15;
  double angle_degrees = 80.0;
  double quantile = 0.985;
};

/// Binary mask: 1 where a seeded uniform draw exceeds `quantile`.
std::vector<float> rain_streak_mask(int width, int height, double quantile, std::uint64_t seed);

/// Procedural rain: thresholded noise, motion-blurred into streaks,
/// peak-normalized and added with weight `intensity`.
Image apply_rain(const Image& image, const RainParams& params, std::uint64_t seed);

/// Peak signal-to-noise ratio on normalized views; +infinity when equal.
double psnr(const Image& a, const Image& b);

}  // namespace odkit::imaging
