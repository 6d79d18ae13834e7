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

#include <cmath>

#include <fmt/format.h>

#include "odkit/common/rng.hpp"
#include "odkit/embedkit/features.hpp"

namespace odkit::embedkit {

FeatureMap::FeatureMap(int width, int height, int channels, std::vector<float> values)
    : width_(width), height_(height), channels_(channels), values_(std::move(values)) {
  if (width < 1 || height < 1 || channels < 1) {
    throw ShapeError(fmt::format("feature map extents must be positive, got {}x{}x{}", width, height, channels));
  }
  const auto expected = positions() * static_cast<std::size_t>(channels);
  if (values_.size() != expected) {
    throw ShapeError(fmt::format("feature map {}x{}x{} needs {} values, got {}", width, height, channels, expected,
                                 values_.size()));
  }
  for (float v : values_) {
    if (!std::isfinite(v)) throw ShapeError("feature map contains non-finite values");
  }
}

FeatureMap FeatureMap::from_tensor(const Tensor& tensor) {
  if (tensor.dims.size() != 3) {
    throw ShapeError(fmt::format("feature map tensor must have rank 3 [W, H, C], got rank {}", tensor.dims.size()));
  }
  return FeatureMap(static_cast<int>(tensor.dims[0]), static_cast<int>(tensor.dims[1]),
                    static_cast<int>(tensor.dims[2]), tensor.values);
}

Tensor FeatureMap::to_tensor() const {
  return Tensor{{static_cast<std::uint64_t>(width_), static_cast<std::uint64_t>(height_),
                 static_cast<std::uint64_t>(channels_)},
                values_};
}

ChannelStats channel_stats(const FeatureMap& features) {
  const int c_count = features.channels();
  const auto n = features.positions();
  const auto values = features.values();

  ChannelStats stats{Eigen::VectorXd::Zero(c_count), Eigen::VectorXd::Zero(c_count)};
  for (std::size_t p = 0; p < n; ++p) {
    for (int c = 0; c < c_count; ++c) stats.mean[c] += values[p * c_count + c];
  }
  stats.mean /= static_cast<double>(n);
  for (std::size_t p = 0; p < n; ++p) {
    for (int c = 0; c < c_count; ++c) {
      const double d = values[p * c_count + c] - stats.mean[c];
      stats.stddev[c] += d * d;
    }
  }
  stats.stddev = (stats.stddev / static_cast<double>(n)).cwiseSqrt();
  return stats;
}

FeatureMap perturb_stats(const FeatureMap& features, const PerturbationSpec& spec) {
  if (!(spec.strength >= 0.0) || !std::isfinite(spec.strength)) {
    throw std::invalid_argument(fmt::format("perturbation strength must be >= 0, got {}", spec.strength));
  }
  if (!(spec.epsilon > 0.0)) throw std::invalid_argument("perturbation epsilon must be positive");
  // With zero strength the jitter is exactly zero and the only change would
  // be the epsilon residual, so return the input unchanged.
  if (spec.strength == 0.0) return features;

  const int c_count = features.channels();
  const auto stats = channel_stats(features);
  Rng rng(spec.seed);
  std::vector<double> scale(c_count), shift(c_count);
  for (int c = 0; c < c_count; ++c) {
    const double a = spec.strength * rng.normal();
    const double b = spec.strength * rng.normal();
    const double mean_new = stats.mean[c] * (1.0 + a);
    const double std_new = stats.stddev[c] * (1.0 + b);
    scale[c] = std_new / (stats.stddev[c] + spec.epsilon);
    shift[c] = mean_new - scale[c] * stats.mean[c];
  }

  const auto in = features.values();
  std::vector<float> out(in.size());
  for (std::size_t i = 0; i < in.size(); ++i) {
    const auto c = i % static_cast<std::size_t>(c_count);
    out[i] = static_cast<float>(scale[c] * in[i] + shift[c]);
  }
  return FeatureMap(features.width(), features.height(), c_count, std::move(out));
}

Embedding layer_domain_feature(const FeatureMap& features) {
  const auto stats = channel_stats(features);
  Embedding e{EmbeddingRole::kLayerDomain, Eigen::VectorXd(2 * features.channels())};
  e.values << stats.mean, stats.stddev;
  return e;
}

std::vector<Embedding> embeddings_from_tensor(const Tensor& tensor, EmbeddingRole role) {
  std::vector<Embedding> out;
  if (tensor.dims.size() == 1) {
    out.push_back({role, Eigen::VectorXf::Map(tensor.values.data(), static_cast<Eigen::Index>(tensor.values.size()))
                             .cast<double>()});
    return out;
  }
  if (tensor.dims.size() != 2) {
    throw ShapeError(fmt::format("embedding tensor must have rank 1 or 2, got rank {}", tensor.dims.size()));
  }
  const auto rows = static_cast<Eigen::Index>(tensor.dims[0]);
  const auto cols = static_cast<Eigen::Index>(tensor.dims[1]);
  for (Eigen::Index g = 0; g < rows; ++g) {
    out.push_back({role, Eigen::VectorXf::Map(tensor.values.data() + g * cols, cols).cast<double>()});
  }
  return out;
}

Tensor embeddings_to_tensor(std::span<const Embedding> embeddings) {
  Tensor t;
  const auto dim = embeddings.empty() ? Eigen::Index{0} : embeddings.front().dim();
  t.dims = {embeddings.size(), static_cast<std::uint64_t>(dim)};
  t.values.reserve(embeddings.size() * static_cast<std::size_t>(dim));
  for (const auto& e : embeddings) {
    if (e.dim() != dim) throw ShapeError("embeddings of mixed dimension cannot share a tensor");
    for (Eigen::Index i = 0; i < dim; ++i) t.values.push_back(static_cast<float>(e.values[i]));
  }
  return t;
}

}  // namespace odkit::embedkit
