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

#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "odkit/embedkit/features.hpp"
#include "odkit/embedkit/params.hpp"

namespace odkit::embedkit {

class ZeroNormError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Throws ZeroNormError if either vector has zero norm, ShapeError on a
/// length mismatch.
double cosine_similarity(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

/// 1-D adaptive average pooling: output i averages
/// [floor(i n / len), ceil((i + 1) n / len)).
Eigen::VectorXd adaptive_avg_pool(const Eigen::VectorXd& input, Eigen::Index length);

/// Softmax over the mixing logits.
Eigen::VectorXd layer_weights(const FusionParams& params);

/// Pools and projects each layer embedding, then mixes them with the
/// softmax layer weights.
Embedding aggregate_domain(std::span<const Embedding> layer_features, const FusionParams& params);

/// Sum of cosine similarities between the domain and each category.
double orthogonality_loss(const Embedding& domain, std::span<const Embedding> categories);

/// MLP([domain; category]) with rectifiers between layers and a linear
/// output layer.
Embedding fuse(const Embedding& domain, const Embedding& category, const FusionParams& params);

/// alpha * fusion + (1 - alpha) * category.
Embedding residual_mix(const Embedding& fusion, const Embedding& category, double alpha);

/// 1 - cosine(grafted, roi).
double contrastive_loss(const Embedding& grafted, const Embedding& roi);

struct Classification {
  std::size_t index = 0;
  std::vector<double> scores;
};

/// Cosine score against every grafted embedding; argmax ties go to the
/// lowest index.
Classification classify(const Embedding& roi, std::span<const Embedding> grafted);

/// Extension, not part of the forward pass: removes the component of the
/// domain embedding lying in the span of the category embeddings.
Embedding remove_category_span(const Embedding& domain, std::span<const Embedding> categories);

}  // namespace odkit::embedkit
