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

#include <Eigen/Dense>

#include "odkit/embedkit/tensor_file.hpp"

namespace odkit::embedkit {

/// Adaptive-average-pool target length is weight.cols(); output is
/// weight.rows().
struct LayerProjection {
  Eigen::MatrixXd weight;
  Eigen::VectorXd bias;
};

struct DenseLayer {
  Eigen::MatrixXd weight;  // [out, in]
  Eigen::VectorXd bias;    // [out]
};

/// Parameters of the domain aggregation and domain/category fusion network.
///
/// Tensor names in a parameter file:
///   projection.<l>.weight [d_domain, pool_len_l], projection.<l>.bias [d_domain]
///   mixing.logits [L]
///   mlp.<i>.weight [out, in], mlp.<i>.bias [out]
///   alpha [1]
struct FusionParams {
  std::vector<LayerProjection> projections;
  Eigen::VectorXd mixing_logits;
  std::vector<DenseLayer> mlp;
  double alpha = 0.0;

  std::size_t layer_count() const { return projections.size(); }
  Eigen::Index domain_dim() const;
  Eigen::Index category_dim() const;

  /// Throws ShapeError on inconsistent shapes and std::invalid_argument on
  /// alpha outside [0, 1].
  void validate() const;

  static FusionParams from_tensor_file(const TensorFile& file);
  TensorFile to_tensor_file() const;
};

}  // namespace odkit::embedkit
