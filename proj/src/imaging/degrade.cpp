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

#include "odkit/imaging/degrade.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <type_traits>
#include <variant>

#include "odkit/common/rng.hpp"
#include "odkit/imaging/kernels.hpp"
#include "odkit/imaging/resample.hpp"

namespace odkit::imaging {

namespace {

void require(bool condition, const std::string& message) {
  if (!condition) throw ParameterError(message);
}

}  // namespace

Image apply_haze(const Image& image, double scattering, double airlight, const DepthModel& depth) {
  require(std::isfinite(scattering) && scattering >= 0.0, "haze: scattering coefficient m must be >= 0");
  require(airlight >= 0.0 && airlight <= 1.0, "haze: airlight must lie in [0, 1]");
  std::visit(
      [](const auto& model) {
        using Model = std::decay_t<decltype(model)>;
        if constexpr (std::is_same_v<Model, ConstantDepth>) {
          require(model.depth > 0.0, "haze: depth must be > 0");
        } else {
          require(model.near_depth > 0.0 && model.far_depth > 0.0, "haze: depths must be > 0");
        }
      },
      depth);
  if (scattering == 0.0) return image;

  const int height = image.height();
  std::vector<double> row_transmission(static_cast<std::size_t>(height));
  for (int y = 0; y < height; ++y) {
    double d = 0.0;
    if (const auto* constant = std::get_if<ConstantDepth>(&depth)) {
      d = constant->depth;
    } else {
      const auto& gradient = std::get<VerticalGradientDepth>(depth);
      const double t = height > 1 ? static_cast<double>(y) / (height - 1) : 0.0;
      d = gradient.far_depth + (gradient.near_depth - gradient.far_depth) * t;
    }
    row_transmission[static_cast<std::size_t>(y)] = std::exp(-scattering * d);
  }

  Image out(image.width(), height);
  for (int y = 0; y < height; ++y) {
    const double t = row_transmission[static_cast<std::size_t>(y)];
    for (int x = 0; x < image.width(); ++x) {
      for (int c = 0; c < Image::kChannels; ++c) {
        out.at(x, y, c) = quantize_sample(image.normalized(x, y, c) * t + airlight * (1.0 - t));
      }
    }
  }
  return out;
}

Image apply_gamma(const Image& image, double gamma) {
  require(std::isfinite(gamma) && gamma > 0.0, "illumination: gamma must be > 0");
  if (gamma == 1.0) return image;
  // 256-entry lookup table; the mapping is per sample value.
  std::array<std::uint8_t, 256> table{};
  for (int v = 0; v < 256; ++v) table[static_cast<std::size_t>(v)] = quantize_sample(std::pow(v / 255.0, gamma));
  Image out = image;
  for (auto& sample : out.pixels()) sample = table[sample];
  return out;
}

Image apply_low_resolution(const Image& image, int factor) {
  require(factor >= 1, "low_resolution: factor must be >= 1");
  require(factor <= std::min(image.width(), image.height()), "low_resolution: factor exceeds image extent");
  if (factor == 1) return image;
  const FloatImage source = to_float(image);
  const FloatImage small = resize_bicubic(source, image.width() / factor, image.height() / factor);
  return quantize(resize_bicubic(small, image.width(), image.height()));
}

Image apply_gaussian_noise(const Image& image, double variance, std::uint64_t seed) {
  require(std::isfinite(variance) && variance > 0.0, "gaussian_noise: variance k must be > 0");
  const double stddev = std::sqrt(variance);
  Rng rng(seed);
  Image out = image;
  for (auto& sample : out.pixels()) sample = quantize_sample(sample / 255.0 + stddev * rng.normal());
  return out;
}

Image apply_gaussian_blur(const Image& image, double sigma) {
  require(std::isfinite(sigma) && sigma >= 0.0, "gaussian_blur: sigma must be >= 0");
  if (sigma < 0.01) return image;
  return quantize(convolve_separable(to_float(image), gaussian_taps(sigma)));
}

Image apply_salt_pepper(const Image& image, double density, std::uint64_t seed) {
  require(density >= 0.0 && density <= 1.0, "salt_pepper: density must lie in [0, 1]");
  if (density == 0.0) return image;
  Rng rng(seed);
  Image out = image;
  for (int y = 0; y < image.height(); ++y) {
    for (int x = 0; x < image.width(); ++x) {
      // Two draws per pixel regardless of outcome keep the stream aligned.
      const bool corrupt = rng.uniform() < density;
      const bool salt = rng.uniform() < 0.5;
      if (!corrupt) continue;
      const std::uint8_t value = salt ? 255 : 0;
      for (int c = 0; c < Image::kChannels; ++c) out.at(x, y, c) = value;
    }
  }
  return out;
}

Image apply_motion_blur(const Image& image, int length, double angle_degrees) {
  require(length >= 1, "motion_blur: length must be >= 1");
  require(std::isfinite(angle_degrees), "motion_blur: angle must be finite");
  if (length == 1) return image;
  return quantize(convolve(to_float(image), ConvolutionKernel::motion(length, angle_degrees)));
}

Image apply_defocus(const Image& image, double radius) {
  require(std::isfinite(radius) && radius >= 0.0, "defocus: radius must be >= 0");
  if (radius < 1.0) return image;
  return quantize(convolve(to_float(image), ConvolutionKernel::disk(radius)));
}

std::vector<float> rain_streak_mask(int width, int height, double quantile, std::uint64_t seed) {
  require(quantile > 0.0 && quantile < 1.0, "rain: quantile must lie in (0, 1)");
  Rng rng(seed);
  std::vector<float> mask(static_cast<std::size_t>(width) * static_cast<std::size_t>(height));
  for (float& m : mask) m = rng.uniform() > quantile ? 1.0f : 0.0f;
  return mask;
}

Image apply_rain(const Image& image, const RainParams& params, std::uint64_t seed) {
  require(params.intensity >= 0.0 && params.intensity <= 1.0, "rain: intensity must lie in [0, 1]");
  require(params.quantile > 0.0 && params.quantile < 1.0, "rain: quantile must lie in (0, 1)");
  require(params.streak_length >= 1, "rain: streak_length must be >= 1");
  require(std::isfinite(params.angle_degrees), "rain: angle must be finite");
  if (params.intensity == 0.0) return image;

  const int width = image.width();
  const int height = image.height();
  const auto mask = rain_streak_mask(width, height, params.quantile, seed);
  auto streaks = convolve_plane(mask, width, height,
                                ConvolutionKernel::motion(params.streak_length, params.angle_degrees));
  const float peak = streaks.empty() ? 0.0f : *std::max_element(streaks.begin(), streaks.end());
  if (peak <= 0.0f) return image;

  Image out(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const double s = streaks[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
                               static_cast<std::size_t>(x)] /
                       peak;
      for (int c = 0; c < Image::kChannels; ++c) {
        out.at(x, y, c) = quantize_sample(image.normalized(x, y, c) + params.intensity * s);
      }
    }
  }
  return out;
}

double psnr(const Image& a, const Image& b) {
  if (a.width() != b.width() || a.height() != b.height()) {
    throw std::invalid_argument("psnr: image dimensions differ");
  }
  if (a.sample_count() == 0) throw std::invalid_argument("psnr: empty images");
  const auto pa = a.pixels();
  const auto pb = b.pixels();
  double sum = 0.0;
  for (std::size_t i = 0; i < pa.size(); ++i) {
    const double d = (static_cast<double>(pa[i]) - static_cast<double>(pb[i])) / 255.0;
    sum += d * d;
  }
  const double mse = sum / static_cast<double>(pa.size());
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(1.0 / mse);
}

}  // namespace odkit::imaging
