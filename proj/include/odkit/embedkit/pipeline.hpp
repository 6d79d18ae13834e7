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

#include <optional>
#include <span>
#include <vector>

#include "odkit/embedkit/domain.hpp"

namespace odkit::embedkit {

enum class PipelineMode { kTrain, kTest };

struct PipelineOptions {
  PipelineMode mode = PipelineMode::kTest;
  /// Used only in training mode.
  std::optional<PerturbationSpec> perturbation;
  /// Which layers receive the perturbation; empty means all.
  std::vector<bool> perturb_layers;
};

struct PipelineResult {
  std::vector<Embedding> layer_features;
  Embedding domain;
  std::vector<Embedding> fused;
  std::vector<Embedding> grafted;
  double orthogonality_loss = 0.0;
  std::vector<double> contrastive_losses;  // one per category, against the RoI
  Classification classification;
};

/// Per-layer perturbation seed.
std::uint64_t layer_seed(std::uint64_t seed, std::size_t layer);

/// Full forward pass: optional statistic perturbation, per-layer domain
/// features, aggregation, per-category fusion and residual mixing, the two
/// loss values and cosine classification of the RoI feature.
PipelineResult run_pipeline(std::span<const FeatureMap> layers, std::span<const Embedding> categories,
                            const FusionParams& params, const Embedding& roi, const PipelineOptions& options = {});

}  // namespace odkit::embedkit
