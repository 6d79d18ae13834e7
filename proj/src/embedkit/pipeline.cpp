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

#include "odkit/embedkit/pipeline.hpp"

#include <fmt/format.h>

#include "odkit/common/hash.hpp"

namespace odkit::embedkit {

std::uint64_t layer_seed(std::uint64_t seed, std::size_t layer) { return derive_seed(seed, fnv1a64("layer"), layer); }

PipelineResult run_pipeline(std::span<const FeatureMap> layers, std::span<const Embedding> categories,
                            const FusionParams& params, const Embedding& roi, const PipelineOptions& options) {
  params.validate();
  if (layers.size() != params.layer_count()) {
    throw ShapeError(fmt::format("got {} feature maps for {} configured layers", layers.size(), params.layer_count()));
  }
  if (categories.empty()) throw ShapeError("pipeline needs at least one category embedding");
  const bool perturb = options.mode == PipelineMode::kTrain && options.perturbation.has_value();
  if (perturb && !options.perturb_layers.empty() && options.perturb_layers.size() != layers.size()) {
    throw ShapeError(fmt::format("perturbation mask has {} entries for {} layers", options.perturb_layers.size(),
                                 layers.size()));
  }

  PipelineResult result;
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const bool masked_in = options.perturb_layers.empty() || options.perturb_layers[l];
    if (perturb && masked_in) {
      auto spec = *options.perturbation;
      spec.seed = layer_seed(spec.seed, l);
      result.layer_features.push_back(layer_domain_feature(perturb_stats(layers[l], spec)));
    } else {
      result.layer_features.push_back(layer_domain_feature(layers[l]));
    }
  }
  result.domain = aggregate_domain(result.layer_features, params);

  for (std::size_t g = 0; g < categories.size(); ++g) {
    if (categories[g].dim() != params.category_dim()) {
      throw ShapeError(fmt::format("category embedding {} has length {}, params expect {}", g, categories[g].dim(),
                                   params.category_dim()));
    }
    result.fused.push_back(fuse(result.domain, categories[g], params));
    result.grafted.push_back(residual_mix(result.fused.back(), categories[g], params.alpha));
  }

  result.orthogonality_loss = orthogonality_loss(result.domain, categories);
  for (const auto& g : result.grafted) result.contrastive_losses.push_back(contrastive_loss(g, roi));
  result.classification = classify(roi, result.grafted);
  return result;
}

}  // namespace odkit::embedkit
