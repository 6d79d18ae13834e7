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

#include "odkit/embedkit/domain.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace odkit::embedkit {

double cosine_similarity(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  if (a.size() != b.size()) throw ShapeError(fmt::format("cosine of vectors of length {} and {}", a.size(), b.size()));
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) throw ZeroNormError("cosine similarity of a zero-norm vector");
  return std::clamp(a.dot(b) / (na * nb), -1.0, 1.0);
}

Eigen::VectorXd adaptive_avg_pool(const Eigen::VectorXd& input, Eigen::Index length) {
  const auto n = input.size();
  if (n < 1 || length < 1) throw ShapeError(fmt::format("cannot pool length {} to {}", n, length));
  Eigen::VectorXd out(length);
  for (Eigen::Index i = 0; i < length; ++i) {
    const auto start = (i * n) / length;
    const auto end = ((i + 1) * n + length - 1) / length;
    out[i] = input.segment(start, end - start).mean();
  }
  return out;
}

Eigen::VectorXd layer_weights(const FusionParams& params) {
  const auto& logits = params.mixing_logits;
  const Eigen::VectorXd e = (logits.array() - logits.maxCoeff()).exp();
  return e / e.sum();
}

Embedding aggregate_domain(std::span<const Embedding> layer_features, const FusionParams& params) {
  if (layer_features.size() != params.layer_count()) {
    throw ShapeError(fmt::format("got {} layer embeddings for {} configured layers", layer_features.size(),
                                 params.layer_count()));
  }
  const auto weights = layer_weights(params);
  Embedding out{EmbeddingRole::kDomain, Eigen::VectorXd::Zero(params.domain_dim())};
  for (std::size_t l = 0; l < layer_features.size(); ++l) {
    const auto& proj = params.projections[l];
    const Eigen::VectorXd pooled = adaptive_avg_pool(layer_features[l].values, proj.weight.cols());
    out.values += weights[static_cast<Eigen::Index>(l)] * (proj.weight * pooled + proj.bias);
  }
  return out;
}

double orthogonality_loss(const Embedding& domain, std::span<const Embedding> categories) {
  double total = 0.0;
  for (const auto& c : categories) total += cosine_similarity(domain.values, c.values);
  return total;
}

Embedding fuse(const Embedding& domain, const Embedding& category, const FusionParams& params) {
  if (params.mlp.empty()) throw ShapeError("fusion params have no mlp layers");
  if (domain.dim() + category.dim() != params.mlp.front().weight.cols()) {
    throw ShapeError(fmt::format("fusion input is {} + {}, mlp expects {}", domain.dim(), category.dim(),
                                 params.mlp.front().weight.cols()));
  }
  Eigen::VectorXd x(domain.dim() + category.dim());
  x << domain.values, category.values;
  for (std::size_t i = 0; i < params.mlp.size(); ++i) {
    x = params.mlp[i].weight * x + params.mlp[i].bias;
    if (i + 1 < params.mlp.size()) x = x.cwiseMax(0.0);
  }
  return {EmbeddingRole::kFusion, std::move(x)};
}

Embedding residual_mix(const Embedding& fusion, const Embedding& category, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument(fmt::format("alpha must lie in [0, 1], got {}", alpha));
  if (fusion.dim() != category.dim()) {
    throw ShapeError(fmt::format("residual mix of lengths {} and {}", fusion.dim(), category.dim()));
  }
  Eigen::VectorXd out(fusion.dim());
  for (Eigen::Index i = 0; i < out.size(); ++i) out[i] = alpha * fusion.values[i] + (1.0 - alpha) * category.values[i];
  return {EmbeddingRole::kGrafted, std::move(out)};
}

double contrastive_loss(const Embedding& grafted, const Embedding& roi) {
  return 1.0 - cosine_similarity(grafted.values, roi.values);
}

Classification classify(const Embedding& roi, std::span<const Embedding> grafted) {
  if (grafted.empty()) throw std::invalid_argument("classify needs at least one category embedding");
  Classification result;
  result.scores.reserve(grafted.size());
  for (const auto& g : grafted) result.scores.push_back(cosine_similarity(roi.values, g.values));
  result.index = static_cast<std::size_t>(std::max_element(result.scores.begin(), result.scores.end()) -
                                          result.scores.begin());
  return result;
}

Embedding remove_category_span(const Embedding& domain, std::span<const Embedding> categories) {
  Embedding out{EmbeddingRole::kDomain, domain.values};
  if (categories.empty()) return out;
  Eigen::MatrixXd basis(domain.dim(), static_cast<Eigen::Index>(categories.size()));
  for (std::size_t g = 0; g < categories.size(); ++g) {
    if (categories[g].dim() != domain.dim()) {
      throw ShapeError(fmt::format("category {} has length {}, domain has {}", g, categories[g].dim(), domain.dim()));
    }
    basis.col(static_cast<Eigen::Index>(g)) = categories[g].values;
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(basis);
  const auto rank = qr.rank();
  if (rank == 0) return out;
  const Eigen::MatrixXd q = Eigen::MatrixXd(qr.householderQ()).leftCols(rank);
  out.values -= q * (q.transpose() * domain.values);
  return out;
}

}  // namespace odkit::embedkit
