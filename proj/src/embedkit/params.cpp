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

#include "odkit/embedkit/params.hpp"

#include <cmath>
#include <string>

#include <fmt/format.h>

#include "odkit/embedkit/features.hpp"

namespace odkit::embedkit {

namespace {

using RowMajor = Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::MatrixXd matrix_from(const TensorFile& file, const std::string& name) {
  const auto& t = file.at(name);
  if (t.dims.size() != 2) throw ShapeError(fmt::format("tensor '{}' must have rank 2, got {}", name, t.dims.size()));
  return RowMajor::Map(t.values.data(), static_cast<Eigen::Index>(t.dims[0]), static_cast<Eigen::Index>(t.dims[1]))
      .cast<double>();
}

Eigen::VectorXd vector_from(const TensorFile& file, const std::string& name) {
  const auto& t = file.at(name);
  if (t.dims.size() != 1) throw ShapeError(fmt::format("tensor '{}' must have rank 1, got {}", name, t.dims.size()));
  return Eigen::VectorXf::Map(t.values.data(), static_cast<Eigen::Index>(t.values.size())).cast<double>();
}

Tensor tensor_of(const Eigen::MatrixXd& m) {
  Tensor t{{static_cast<std::uint64_t>(m.rows()), static_cast<std::uint64_t>(m.cols())}, {}};
  t.values.resize(static_cast<std::size_t>(m.size()));
  RowMajor::Map(t.values.data(), m.rows(), m.cols()) = m.cast<float>();
  return t;
}

Tensor tensor_of(const Eigen::VectorXd& v) {
  Tensor t{{static_cast<std::uint64_t>(v.size())}, {}};
  t.values.resize(static_cast<std::size_t>(v.size()));
  Eigen::VectorXf::Map(t.values.data(), v.size()) = v.cast<float>();
  return t;
}

void require_finite(const Eigen::MatrixXd& m, const std::string& name) {
  if (!m.allFinite()) throw ShapeError(fmt::format("{} contains non-finite values", name));
}

}  // namespace

Eigen::Index FusionParams::domain_dim() const { return projections.empty() ? 0 : projections.front().weight.rows(); }

Eigen::Index FusionParams::category_dim() const { return mlp.empty() ? 0 : mlp.back().weight.rows(); }

void FusionParams::validate() const {
  if (projections.empty()) throw ShapeError("fusion params need at least one layer projection");
  const auto d = domain_dim();
  for (std::size_t l = 0; l < projections.size(); ++l) {
    const auto& p = projections[l];
    const auto name = fmt::format("projection.{}", l);
    if (p.weight.rows() != d || p.weight.cols() < 1) {
      throw ShapeError(fmt::format("{}.weight is [{}, {}], expected [{}, >=1]", name, p.weight.rows(),
                                   p.weight.cols(), d));
    }
    if (p.bias.size() != d) throw ShapeError(fmt::format("{}.bias has length {}, expected {}", name, p.bias.size(), d));
    require_finite(p.weight, name + ".weight");
    require_finite(p.bias, name + ".bias");
  }
  if (mixing_logits.size() != static_cast<Eigen::Index>(projections.size())) {
    throw ShapeError(fmt::format("mixing.logits has length {}, expected one per layer ({})", mixing_logits.size(),
                                 projections.size()));
  }
  require_finite(mixing_logits, "mixing.logits");

  if (mlp.empty()) throw ShapeError("fusion params need at least one mlp layer");
  const auto d_cat = category_dim();
  if (mlp.front().weight.cols() != d + d_cat) {
    throw ShapeError(fmt::format("mlp.0.weight takes {} inputs, expected domain {} + category {}",
                                 mlp.front().weight.cols(), d, d_cat));
  }
  for (std::size_t i = 0; i < mlp.size(); ++i) {
    const auto& layer = mlp[i];
    const auto name = fmt::format("mlp.{}", i);
    if (layer.bias.size() != layer.weight.rows()) {
      throw ShapeError(fmt::format("{}.bias has length {}, expected {}", name, layer.bias.size(), layer.weight.rows()));
    }
    if (i + 1 < mlp.size() && mlp[i + 1].weight.cols() != layer.weight.rows()) {
      throw ShapeError(fmt::format("mlp.{}.weight takes {} inputs but mlp.{} produces {}", i + 1,
                                   mlp[i + 1].weight.cols(), i, layer.weight.rows()));
    }
    require_finite(layer.weight, name + ".weight");
    require_finite(layer.bias, name + ".bias");
  }
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument(fmt::format("alpha must lie in [0, 1], got {}", alpha));
}

FusionParams FusionParams::from_tensor_file(const TensorFile& file) {
  FusionParams p;
  for (std::size_t l = 0; file.find(fmt::format("projection.{}.weight", l)) != nullptr; ++l) {
    p.projections.push_back({matrix_from(file, fmt::format("projection.{}.weight", l)),
                             vector_from(file, fmt::format("projection.{}.bias", l))});
  }
  p.mixing_logits = vector_from(file, "mixing.logits");
  for (std::size_t i = 0; file.find(fmt::format("mlp.{}.weight", i)) != nullptr; ++i) {
    p.mlp.push_back({matrix_from(file, fmt::format("mlp.{}.weight", i)), vector_from(file, fmt::format("mlp.{}.bias", i))});
  }
  const auto alpha = vector_from(file, "alpha");
  if (alpha.size() != 1) throw ShapeError(fmt::format("alpha must have one element, got {}", alpha.size()));
  p.alpha = alpha[0];
  p.validate();
  return p;
}

TensorFile FusionParams::to_tensor_file() const {
  TensorFile file;
  for (std::size_t l = 0; l < projections.size(); ++l) {
    file.add(fmt::format("projection.{}.weight", l), tensor_of(projections[l].weight));
    file.add(fmt::format("projection.{}.bias", l), tensor_of(projections[l].bias));
  }
  file.add("mixing.logits", tensor_of(mixing_logits));
  for (std::size_t i = 0; i < mlp.size(); ++i) {
    file.add(fmt::format("mlp.{}.weight", i), tensor_of(mlp[i].weight));
    file.add(fmt::format("mlp.{}.bias", i), tensor_of(mlp[i].bias));
  }
  file.add("alpha", Tensor{{1}, {static_cast<float>(alpha)}});
  return file;
}

}  // namespace odkit::embedkit
