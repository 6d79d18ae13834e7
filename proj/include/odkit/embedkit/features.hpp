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
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "odkit/embedkit/tensor_file.hpp"

namespace odkit::embedkit {

class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// W x H x C feature map; element (w, h, c) lives at ((w * H) + h) * C + c.
class FeatureMap {
 public:
  /// Throws ShapeError on non-positive extents, a size mismatch or
  /// non-finite values.
  FeatureMap(int width, int height, int channels, std::vector<float> values);

  int width() const { return width_; }
  int height() const { return height_; }
  int channels() const { return channels_; }
  std::size_t positions() const { return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_); }
  std::span<const float> values() const { return values_; }

  float at(int w, int h, int c) const {
    return values_[(static_cast<std::size_t>(w) * static_cast<std::size_t>(height_) + static_cast<std::size_t>(h)) *
                       static_cast<std::size_t>(channels_) +
                   static_cast<std::size_t>(c)];
  }

  /// Rank-3 tensor with dims [W, H, C].
  static FeatureMap from_tensor(const Tensor& tensor);
  Tensor to_tensor() const;

  friend bool operator==(const FeatureMap&, const FeatureMap&) = default;

 private:
  int width_;
  int height_;
  int channels_;
  std::vector<float> values_;
};

/// Per-channel spatial mean and population standard deviation.
struct ChannelStats {
  Eigen::VectorXd mean;
  Eigen::VectorXd stddev;
};

ChannelStats channel_stats(const FeatureMap& features);

struct PerturbationSpec {
  double strength = 0.0;
  std::uint64_t seed = 0;
  double epsilon = 1e-5;
};

/// AdaIN-style statistic replacement with jittered statistics:
/// mean' = mean (1 + a), std' = std (1 + b), a, b ~ N(0, strength^2) per
/// channel, out = std' (F - mean) / (std + epsilon) + mean'.
/// Strength 0 returns the input unchanged.
FeatureMap perturb_stats(const FeatureMap& features, const PerturbationSpec& spec);

enum class EmbeddingRole { kLayerDomain, kDomain, kCategory, kFusion, kGrafted, kRoi };

struct Embedding {
  EmbeddingRole role = EmbeddingRole::kCategory;
  Eigen::VectorXd values;

  Eigen::Index dim() const { return values.size(); }
};

/// [mean; stddev], length 2C.
Embedding layer_domain_feature(const FeatureMap& features);

/// Row g of a [G, d] tensor becomes one embedding; a rank-1 tensor is a
/// single embedding.
std::vector<Embedding> embeddings_from_tensor(const Tensor& tensor, EmbeddingRole role);
Tensor embeddings_to_tensor(std::span<const Embedding> embeddings);

}  // namespace odkit::embedkit
