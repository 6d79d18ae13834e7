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

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numeric>
#include <random>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "fixtures.hpp"
#include "odkit/embedkit/domain.hpp"
#include "odkit/embedkit/features.hpp"
#include "odkit/embedkit/params.hpp"
#include "odkit/embedkit/pipeline.hpp"
#include "odkit/embedkit/tensor_file.hpp"

namespace odkit::embedkit {
namespace {

using nlohmann::json;

Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  std::copy(v.begin(), v.end(), out.data());
  return out;
}

Embedding emb(std::initializer_list<double> v, EmbeddingRole role = EmbeddingRole::kCategory) {
  return {role, vec(v)};
}

FeatureMap random_map(int w, int h, int c, std::uint64_t seed, double mean = 0.0, double sd = 1.0) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> n(mean, sd);
  std::vector<float> values(static_cast<std::size_t>(w * h * c));
  for (auto& v : values) v = static_cast<float>(n(gen));
  return FeatureMap(w, h, c, std::move(values));
}

std::vector<std::uint8_t> u32le(std::uint32_t v) {
  return {static_cast<std::uint8_t>(v), static_cast<std::uint8_t>(v >> 8), static_cast<std::uint8_t>(v >> 16),
          static_cast<std::uint8_t>(v >> 24)};
}

void append(std::vector<std::uint8_t>& out, const std::vector<std::uint8_t>& more) {
  out.insert(out.end(), more.begin(), more.end());
}

TEST(TensorFile, EncodesDocumentedLayout) {
  TensorFile file;
  file.metadata = "{}";
  file.add("x", Tensor{{2}, {1.0f, -2.0f}});
  std::vector<std::uint8_t> expected = {'O', 'D', 'K', 'T'};
  append(expected, u32le(1));
  append(expected, u32le(2));
  append(expected, {'{', '}'});
  append(expected, u32le(1));
  append(expected, u32le(1));
  append(expected, {'x'});
  append(expected, u32le(1));  // dtype float32
  append(expected, u32le(1));  // rank
  append(expected, {2, 0, 0, 0, 0, 0, 0, 0});
  append(expected, {0x00, 0x00, 0x80, 0x3f});  // 1.0f
  append(expected, {0x00, 0x00, 0x00, 0xc0});  // -2.0f
  EXPECT_EQ(encode_tensor_file(file), expected);
}

TEST(TensorFile, RoundTrip) {
  TensorFile file;
  file.metadata = R"({"source": "unit"})";
  file.add("a", Tensor{{2, 3}, {1, 2, 3, 4, 5, 6}});
  file.add("scalar", Tensor{{}, {7.5f}});
  file.add("empty", Tensor{{0, 4}, {}});
  testing::TempDir dir("tensor");
  write_tensor_file(dir / "t.odkt", file);
  const auto back = read_tensor_file(dir / "t.odkt");
  EXPECT_EQ(back.metadata, file.metadata);
  ASSERT_EQ(back.tensors.size(), 3u);
  EXPECT_EQ(back.at("a"), file.at("a"));
  EXPECT_EQ(back.at("scalar"), file.at("scalar"));
  EXPECT_EQ(back.at("empty").numel(), 0u);
  EXPECT_EQ(back.tensors[0].first, "a");
  EXPECT_THROW(back.at("missing"), TensorFormatError);
}

TEST(TensorFile, RejectsMalformedInput) {
  TensorFile file;
  file.add("a", Tensor{{2}, {1, 2}});
  const auto good = encode_tensor_file(file);

  auto bad = good;
  bad[0] = 'X';
  EXPECT_THROW(decode_tensor_file(bad), TensorFormatError);
  bad = good;
  bad[4] = 2;
  EXPECT_THROW(decode_tensor_file(bad), TensorFormatError);
  bad = good;
  bad.pop_back();
  EXPECT_THROW(decode_tensor_file(bad), TensorFormatError);
  bad = good;
  bad.push_back(0);
  EXPECT_THROW(decode_tensor_file(bad), TensorFormatError);
  bad = good;
  bad[4 + 4 + 4 + 4 + 4 + 1] = 2;  // dtype
  EXPECT_THROW(decode_tensor_file(bad), TensorFormatError);

  EXPECT_THROW(file.add("a", Tensor{{1}, {0}}), TensorFormatError);
  EXPECT_THROW(file.add("b", Tensor{{3}, {0}}), TensorFormatError);
  EXPECT_THROW(read_tensor_file("/nonexistent/file.odkt"), TensorFormatError);
}

TEST(FeatureMap, LayoutAndTensorRoundTrip) {
  std::vector<float> values(2 * 3 * 4);
  std::iota(values.begin(), values.end(), 0.0f);
  const FeatureMap fm(2, 3, 4, values);
  EXPECT_EQ(fm.at(1, 2, 3), static_cast<float>((1 * 3 + 2) * 4 + 3));
  const auto t = fm.to_tensor();
  EXPECT_EQ(t.dims, (std::vector<std::uint64_t>{2, 3, 4}));
  EXPECT_EQ(FeatureMap::from_tensor(t), fm);
  EXPECT_THROW(FeatureMap(2, 3, 4, std::vector<float>(5)), ShapeError);
  EXPECT_THROW(FeatureMap(0, 3, 4, {}), ShapeError);
  EXPECT_THROW(FeatureMap(1, 1, 1, {NAN}), ShapeError);
  EXPECT_THROW(FeatureMap::from_tensor(Tensor{{4}, {1, 2, 3, 4}}), ShapeError);
}

TEST(ChannelStats, HandValues) {
  // One channel over four positions holding 1, 2, 3, 4.
  const FeatureMap fm(2, 2, 1, {1, 2, 3, 4});
  const auto s = channel_stats(fm);
  EXPECT_DOUBLE_EQ(s.mean[0], 2.5);
  EXPECT_DOUBLE_EQ(s.stddev[0], std::sqrt(1.25));
  const FeatureMap constant(3, 1, 2, {5, -1, 5, -1, 5, -1});
  const auto c = channel_stats(constant);
  EXPECT_DOUBLE_EQ(c.mean[1], -1.0);
  EXPECT_DOUBLE_EQ(c.stddev[0], 0.0);
}

TEST(ChannelStats, PositionPermutationInvariance) {
  const auto fm = random_map(5, 4, 6, 11);
  std::vector<std::size_t> order(fm.positions());
  std::iota(order.begin(), order.end(), 0u);
  std::mt19937 gen(3);
  std::shuffle(order.begin(), order.end(), gen);
  std::vector<float> permuted;
  for (auto p : order) {
    for (int c = 0; c < fm.channels(); ++c) permuted.push_back(fm.values()[p * 6 + static_cast<std::size_t>(c)]);
  }
  const auto a = channel_stats(fm);
  const auto b = channel_stats(FeatureMap(5, 4, 6, permuted));
  EXPECT_LE((a.mean - b.mean).cwiseAbs().maxCoeff(), 1e-6);
  EXPECT_LE((a.stddev - b.stddev).cwiseAbs().maxCoeff(), 1e-6);
}

TEST(ChannelStats, AffineEquivariance) {
  const auto fm = random_map(6, 5, 3, 12);
  for (double scale : {2.0, -0.5}) {
    const double shift = 1.5;
    std::vector<float> moved;
    for (float v : fm.values()) moved.push_back(static_cast<float>(scale * v + shift));
    const auto a = channel_stats(fm);
    const auto b = channel_stats(FeatureMap(6, 5, 3, moved));
    for (Eigen::Index c = 0; c < 3; ++c) {
      EXPECT_NEAR(b.mean[c], scale * a.mean[c] + shift, 1e-6);
      EXPECT_NEAR(b.stddev[c], std::abs(scale) * a.stddev[c], 1e-6);
    }
  }
}

TEST(PerturbStats, ZeroStrengthIsIdentity) {
  const auto fm = random_map(4, 4, 8, 5);
  EXPECT_EQ(perturb_stats(fm, {0.0, 99, 1e-5}), fm);
}

TEST(PerturbStats, DeterministicPerSeed) {
  const auto fm = random_map(4, 4, 8, 5);
  EXPECT_EQ(perturb_stats(fm, {0.3, 7}), perturb_stats(fm, {0.3, 7}));
  EXPECT_NE(perturb_stats(fm, {0.3, 7}), perturb_stats(fm, {0.3, 8}));
  EXPECT_THROW(perturb_stats(fm, {-0.1, 7}), std::invalid_argument);
}

TEST(PerturbStats, JitterScalesWithStrength) {
  // With many channels the relative changes of mean and std are samples of
  // N(0, s^2); their spread must track s.
  const int channels = 2000;
  const auto fm = random_map(8, 8, channels, 21, 3.0, 1.5);
  const auto before = channel_stats(fm);
  for (double s : {0.05, 0.2}) {
    const auto after = channel_stats(perturb_stats(fm, {s, 4}));
    double sum_a = 0.0, sum_a2 = 0.0, sum_b = 0.0, sum_b2 = 0.0;
    for (int c = 0; c < channels; ++c) {
      const double a = after.mean[c] / before.mean[c] - 1.0;
      const double b = after.stddev[c] * (before.stddev[c] + 1e-5) / (before.stddev[c] * before.stddev[c]) - 1.0;
      sum_a += a;
      sum_a2 += a * a;
      sum_b += b;
      sum_b2 += b * b;
    }
    const double n = channels;
    const double sd_a = std::sqrt(sum_a2 / n - (sum_a / n) * (sum_a / n));
    const double sd_b = std::sqrt(sum_b2 / n - (sum_b / n) * (sum_b / n));
    EXPECT_NEAR(sd_a / s, 1.0, 0.1) << s;
    EXPECT_NEAR(sd_b / s, 1.0, 0.1) << s;
    EXPECT_NEAR(sum_a / n, 0.0, 4.0 * s / std::sqrt(n));
  }
}

TEST(PerturbStats, ChannelsStayIncreasingAffineMapsOfTheInput) {
  const auto fm = random_map(16, 16, 4, 8);
  const auto perturbed = perturb_stats(fm, {0.1, 2});
  const auto in = channel_stats(fm);
  const auto out = channel_stats(perturbed);
  for (int c = 0; c < 4; ++c) {
    double sxy = 0.0;
    for (std::size_t p = 0; p < fm.positions(); ++p) {
      const double x = fm.values()[p * 4 + static_cast<std::size_t>(c)] - in.mean[c];
      const double y = perturbed.values()[p * 4 + static_cast<std::size_t>(c)] - out.mean[c];
      sxy += x * y;
    }
    const double corr = sxy / static_cast<double>(fm.positions()) / (in.stddev[c] * out.stddev[c]);
    EXPECT_NEAR(corr, 1.0, 1e-4);
  }
}

TEST(LayerDomainFeature, MeanThenStd) {
  const FeatureMap fm(2, 1, 2, {1, 10, 3, 30});
  const auto e = layer_domain_feature(fm);
  EXPECT_EQ(e.role, EmbeddingRole::kLayerDomain);
  ASSERT_EQ(e.dim(), 4);
  EXPECT_DOUBLE_EQ(e.values[0], 2.0);
  EXPECT_DOUBLE_EQ(e.values[1], 20.0);
  EXPECT_DOUBLE_EQ(e.values[2], 1.0);
  EXPECT_DOUBLE_EQ(e.values[3], 10.0);
}

TEST(Embeddings, TensorRoundTrip) {
  const std::vector<Embedding> es = {emb({1, 2, 3}), emb({4, 5, 6})};
  const auto t = embeddings_to_tensor(es);
  EXPECT_EQ(t.dims, (std::vector<std::uint64_t>{2, 3}));
  const auto back = embeddings_from_tensor(t, EmbeddingRole::kRoi);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[1].values, es[1].values);
  EXPECT_EQ(back[0].role, EmbeddingRole::kRoi);
  EXPECT_EQ(embeddings_from_tensor(Tensor{{3}, {1, 2, 3}}, EmbeddingRole::kRoi).size(), 1u);
  const std::vector<Embedding> mixed = {emb({1}), emb({1, 2})};
  EXPECT_THROW(embeddings_to_tensor(mixed), ShapeError);
}

TEST(Cosine, BasicsAndErrors) {
  EXPECT_DOUBLE_EQ(cosine_similarity(vec({1, 0}), vec({0, 1})), 0.0);
  EXPECT_DOUBLE_EQ(cosine_similarity(vec({2, 0}), vec({-3, 0})), -1.0);
  EXPECT_NEAR(cosine_similarity(vec({1, 1}), vec({1, 0})), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_LE(cosine_similarity(vec({0.1, 0.2, 0.3}), vec({0.1, 0.2, 0.3})), 1.0);
  EXPECT_THROW(cosine_similarity(vec({0, 0}), vec({1, 0})), ZeroNormError);
  EXPECT_THROW(cosine_similarity(vec({1}), vec({1, 0})), ShapeError);
}

TEST(AdaptivePool, Bins) {
  const auto v = vec({1, 2, 3, 4, 5, 6});
  EXPECT_EQ(adaptive_avg_pool(v, 3), vec({1.5, 3.5, 5.5}));
  // 6 -> 4: bins [0,2) [1,3) [3,5) [4,6).
  EXPECT_EQ(adaptive_avg_pool(v, 4), vec({1.5, 2.5, 4.5, 5.5}));
  EXPECT_EQ(adaptive_avg_pool(v, 6), v);
  EXPECT_EQ(adaptive_avg_pool(v, 1), vec({3.5}));
}

FusionParams simple_params(std::vector<Eigen::Index> pool_lengths, Eigen::Index d, Eigen::Index category_dim,
                           std::uint64_t seed, double alpha) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> n(0.0, 0.5);
  const auto random = [&](Eigen::Index r, Eigen::Index c) {
    Eigen::MatrixXd m(r, c);
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = n(gen);
    return m;
  };
  FusionParams p;
  for (auto len : pool_lengths) p.projections.push_back({random(d, len), random(d, 1).col(0)});
  p.mixing_logits = random(static_cast<Eigen::Index>(pool_lengths.size()), 1).col(0);
  p.mlp.push_back({random(6, d + category_dim), random(6, 1).col(0)});
  p.mlp.push_back({random(category_dim, 6), random(category_dim, 1).col(0)});
  p.alpha = alpha;
  return p;
}

TEST(Params, ValidateAndFileRoundTrip) {
  const auto p = simple_params({4, 3}, 5, 4, 1, 0.25);
  EXPECT_NO_THROW(p.validate());
  EXPECT_EQ(p.domain_dim(), 5);
  EXPECT_EQ(p.category_dim(), 4);
  const auto file = p.to_tensor_file();
  EXPECT_EQ(file.at("projection.1.weight").dims, (std::vector<std::uint64_t>{5, 3}));
  EXPECT_EQ(file.at("mixing.logits").dims, (std::vector<std::uint64_t>{2}));
  EXPECT_EQ(file.at("mlp.0.weight").dims, (std::vector<std::uint64_t>{6, 9}));
  const auto back = FusionParams::from_tensor_file(decode_tensor_file(encode_tensor_file(file)));
  EXPECT_EQ(back.layer_count(), 2u);
  EXPECT_NEAR(back.alpha, 0.25, 0);
  EXPECT_LE((back.mlp[1].weight - p.mlp[1].weight).cwiseAbs().maxCoeff(), 1e-6);

  auto bad = p;
  bad.mixing_logits = vec({0});
  EXPECT_THROW(bad.validate(), ShapeError);
  bad = p;
  bad.mlp[0].weight = Eigen::MatrixXd::Zero(6, 8);
  EXPECT_THROW(bad.validate(), ShapeError);
  bad = p;
  bad.alpha = 1.5;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
}

TEST(Aggregate, SingleLayerIsItsProjection) {
  auto p = simple_params({3}, 4, 2, 2, 0.5);
  const Embedding layer = emb({1, 2, 3, 4, 5, 6}, EmbeddingRole::kLayerDomain);
  const auto d = aggregate_domain(std::span(&layer, 1), p);
  const Eigen::VectorXd expected = p.projections[0].weight * vec({1.5, 3.5, 5.5}) + p.projections[0].bias;
  EXPECT_LE((d.values - expected).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_EQ(d.role, EmbeddingRole::kDomain);
}

TEST(Aggregate, ConvexCombinationOfProjectedLayers) {
  const auto p = simple_params({4, 4, 2}, 5, 3, 3, 0.5);
  const std::vector<Embedding> layers = {emb({1, -2, 3, 0.5, 2, 1, 0, -1}), emb({0.2, 0.4, -0.6, 0.8}),
                                         emb({3, 1, -1, 2})};
  const auto d = aggregate_domain(layers, p);
  const auto w = layer_weights(p);
  EXPECT_NEAR(w.sum(), 1.0, 1e-15);
  EXPECT_TRUE((w.array() > 0).all());
  for (Eigen::Index i = 0; i < d.dim(); ++i) {
    double lo = INFINITY, hi = -INFINITY;
    for (std::size_t l = 0; l < layers.size(); ++l) {
      const auto& proj = p.projections[l];
      const double v = (proj.weight * adaptive_avg_pool(layers[l].values, proj.weight.cols()) + proj.bias)[i];
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    EXPECT_GE(d.values[i], lo - 1e-12);
    EXPECT_LE(d.values[i], hi + 1e-12);
  }
}

TEST(Aggregate, EqualLogitsAverage) {
  auto p = simple_params({2, 2}, 2, 2, 4, 0.5);
  p.mixing_logits = vec({3.0, 3.0});
  for (auto& proj : p.projections) {
    proj.weight = Eigen::MatrixXd::Identity(2, 2);
    proj.bias = Eigen::VectorXd::Zero(2);
  }
  const std::vector<Embedding> layers = {emb({2, 4}), emb({6, 0})};
  EXPECT_EQ(aggregate_domain(layers, p).values, vec({4, 2}));
}

TEST(OrthogonalityLoss, Cases) {
  const auto d = emb({1, 0, 0}, EmbeddingRole::kDomain);
  const std::vector<Embedding> orthogonal = {emb({0, 1, 0}), emb({0, 0, 2})};
  EXPECT_DOUBLE_EQ(orthogonality_loss(d, orthogonal), 0.0);
  const std::vector<Embedding> parallel = {emb({2, 0, 0}), emb({5, 0, 0}), emb({-1, 0, 0})};
  EXPECT_DOUBLE_EQ(orthogonality_loss(d, parallel), 1.0);
  std::mt19937 gen(6);
  std::normal_distribution<double> n;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Embedding> cs(4, emb({0, 0, 0}));
    for (auto& c : cs) c.values = vec({n(gen), n(gen), n(gen)});
    const double loss = orthogonality_loss(emb({n(gen), n(gen), n(gen)}), cs);
    EXPECT_GE(loss, -4.0);
    EXPECT_LE(loss, 4.0);
  }
}

TEST(Fuse, ZeroAndSelectingNetworks) {
  FusionParams p = simple_params({2}, 2, 3, 5, 0.5);
  p.mlp = {{Eigen::MatrixXd::Zero(3, 5), Eigen::VectorXd::Zero(3)}};
  const auto d = emb({1, 2}, EmbeddingRole::kDomain);
  const auto c = emb({3, 4, 5});
  EXPECT_EQ(fuse(d, c, p).values, Eigen::VectorXd::Zero(3));
  // [0 | I] passes the category through a single linear layer.
  Eigen::MatrixXd select = Eigen::MatrixXd::Zero(3, 5);
  select.rightCols(3) = Eigen::MatrixXd::Identity(3, 3);
  p.mlp = {{select, Eigen::VectorXd::Zero(3)}};
  EXPECT_EQ(fuse(d, c, p).values, c.values);
  // Hidden rectifier clips negatives.
  p.mlp = {{-Eigen::MatrixXd::Identity(5, 5), Eigen::VectorXd::Zero(5)}, {select, Eigen::VectorXd::Zero(3)}};
  EXPECT_EQ(fuse(d, c, p).values, Eigen::VectorXd::Zero(3));
  EXPECT_THROW(fuse(d, emb({1}), p), ShapeError);
}

TEST(ResidualMix, InterpolationIdentity) {
  const auto f = emb({0.3, -1.7, 2.25}, EmbeddingRole::kFusion);
  const auto c = emb({1.1, 0.4, -3.0});
  EXPECT_EQ(residual_mix(f, c, 0.0).values, c.values);
  EXPECT_EQ(residual_mix(f, c, 1.0).values, f.values);
  for (double a : {0.1, 0.25, 0.5, 0.9}) {
    const auto g = residual_mix(f, c, a);
    for (Eigen::Index i = 0; i < 3; ++i) EXPECT_EQ(g.values[i], a * f.values[i] + (1.0 - a) * c.values[i]);
  }
  EXPECT_THROW(residual_mix(f, c, -0.1), std::invalid_argument);
  EXPECT_THROW(residual_mix(f, emb({1}), 0.5), ShapeError);
}

TEST(ContrastiveLoss, Bounds) {
  EXPECT_NEAR(contrastive_loss(emb({1, 2}), emb({2, 4})), 0.0, 1e-15);
  EXPECT_NEAR(contrastive_loss(emb({1, 0}), emb({0, 3})), 1.0, 1e-15);
  EXPECT_NEAR(contrastive_loss(emb({1, 2}), emb({-1, -2})), 2.0, 1e-15);
  std::mt19937 gen(8);
  std::normal_distribution<double> n;
  for (int trial = 0; trial < 100; ++trial) {
    const double loss = contrastive_loss(emb({n(gen), n(gen), n(gen), n(gen)}), emb({n(gen), n(gen), n(gen), n(gen)}));
    EXPECT_GE(loss, 0.0);
    EXPECT_LE(loss, 2.0);
  }
}

TEST(Classify, ArgmaxAndScaleInvariance) {
  const std::vector<Embedding> grafted = {emb({1, 0, 0}), emb({0.6, 0.8, 0}), emb({0, 0, 1})};
  const auto roi = emb({0.5, 0.9, 0.1}, EmbeddingRole::kRoi);
  const auto r = classify(roi, grafted);
  EXPECT_EQ(r.index, 1u);
  ASSERT_EQ(r.scores.size(), 3u);
  for (double scale : {1e-3, 0.5, 7.0, 1e4}) {
    const auto scaled = classify({EmbeddingRole::kRoi, roi.values * scale}, grafted);
    EXPECT_EQ(scaled.index, r.index);
    std::vector<Embedding> scaled_grafted = grafted;
    for (auto& g : scaled_grafted) g.values *= scale;
    EXPECT_EQ(classify(roi, scaled_grafted).index, r.index);
  }
  // Ties resolve to the lowest index.
  const std::vector<Embedding> tied = {emb({0, 1}), emb({1, 0}), emb({2, 0})};
  EXPECT_EQ(classify(emb({1, 0}), tied).index, 1u);
  EXPECT_THROW(classify(roi, std::vector<Embedding>{}), std::invalid_argument);
}

TEST(RemoveCategorySpan, ResultIsOrthogonalToCategories) {
  const std::vector<Embedding> cs = {emb({1, 1, 0, 0}), emb({0, 1, 1, 0}), emb({1, 2, 1, 0})};  // rank 2
  const auto d = emb({3, -1, 2, 5}, EmbeddingRole::kDomain);
  const auto out = remove_category_span(d, cs);
  for (const auto& c : cs) EXPECT_NEAR(out.values.dot(c.values), 0.0, 1e-12);
  // The out-of-span coordinate is untouched.
  EXPECT_NEAR(out.values[3], 5.0, 1e-12);
  EXPECT_EQ(remove_category_span(d, std::vector<Embedding>{}).values, d.values);
}

Eigen::VectorXd json_vec(const json& j) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  return v;
}

Eigen::MatrixXd json_mat(const json& j) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(j[0].size()));
  for (std::size_t r = 0; r < j.size(); ++r) m.row(static_cast<Eigen::Index>(r)) = json_vec(j[r]).transpose();
  return m;
}

void expect_close(const Eigen::VectorXd& actual, const json& expected, double tol, const std::string& what) {
  const auto e = json_vec(expected);
  ASSERT_EQ(actual.size(), e.size()) << what;
  EXPECT_LE((actual - e).cwiseAbs().maxCoeff(), tol) << what;
}

TEST(Pipeline, MatchesScriptedOracle) {
  const auto fixture = json::parse(testing::read_file(testing::test_data_dir() / "embed" / "pipeline.json"));
  const auto& in = fixture["inputs"];
  const auto& ex = fixture["expected"];
  std::vector<FeatureMap> layers;
  for (const auto& l : in["layers"]) {
    const auto dims = l["dims"].get<std::vector<int>>();
    layers.emplace_back(dims[0], dims[1], dims[2], l["values"].get<std::vector<float>>());
  }
  FusionParams p;
  for (const auto& pr : in["projections"]) p.projections.push_back({json_mat(pr["weight"]), json_vec(pr["bias"])});
  p.mixing_logits = json_vec(in["mixing_logits"]);
  for (const auto& m : in["mlp"]) p.mlp.push_back({json_mat(m["weight"]), json_vec(m["bias"])});
  p.alpha = in["alpha"].get<double>();
  std::vector<Embedding> categories;
  for (const auto& c : in["categories"]) categories.push_back({EmbeddingRole::kCategory, json_vec(c)});
  const Embedding roi{EmbeddingRole::kRoi, json_vec(in["roi"])};

  const auto r = run_pipeline(layers, categories, p, roi);
  constexpr double kTol = 1e-5;
  for (std::size_t l = 0; l < 2; ++l) expect_close(r.layer_features[l].values, ex["layer_features"][l], kTol, "layer");
  expect_close(r.domain.values, ex["domain"], kTol, "domain");
  for (std::size_t g = 0; g < 3; ++g) {
    expect_close(r.fused[g].values, ex["fused"][g], kTol, "fused");
    expect_close(r.grafted[g].values, ex["grafted"][g], kTol, "grafted");
    EXPECT_NEAR(r.contrastive_losses[g], ex["contrastive_losses"][g].get<double>(), kTol);
    EXPECT_NEAR(r.classification.scores[g], ex["scores"][g].get<double>(), kTol);
  }
  EXPECT_NEAR(r.orthogonality_loss, ex["orthogonality_loss"].get<double>(), kTol);
  EXPECT_EQ(r.classification.index, ex["index"].get<std::size_t>());
}

TEST(Pipeline, AlphaZeroReturnsCategoriesAndZeroMlpGivesZeroFusion) {
  auto p = simple_params({4}, 3, 3, 9, 0.0);
  for (auto& layer : p.mlp) {
    layer.weight.setZero();
    layer.bias.setZero();
  }
  const std::vector<FeatureMap> layers = {random_map(3, 3, 2, 1)};
  const std::vector<Embedding> cs = {emb({1, 2, 3}), emb({-1, 0, 4})};
  const auto r = run_pipeline(layers, cs, p, emb({1, 1, 1}, EmbeddingRole::kRoi));
  EXPECT_EQ(r.grafted[0].values, cs[0].values);
  EXPECT_EQ(r.grafted[1].values, cs[1].values);
  EXPECT_EQ(r.fused[0].values, Eigen::VectorXd::Zero(3));
}

TEST(Pipeline, PerturbationOnlyInTrainingMode) {
  const auto p = simple_params({4, 2}, 3, 3, 10, 0.5);
  const std::vector<FeatureMap> layers = {random_map(3, 3, 2, 1), random_map(2, 2, 1, 2)};
  const std::vector<Embedding> cs = {emb({1, 2, 3}), emb({-1, 0, 4})};
  const auto roi = emb({1, 1, 1}, EmbeddingRole::kRoi);
  PipelineOptions test_mode;
  test_mode.perturbation = PerturbationSpec{0.5, 3};
  const auto plain = run_pipeline(layers, cs, p, roi);
  EXPECT_EQ(run_pipeline(layers, cs, p, roi, test_mode).domain.values, plain.domain.values);

  PipelineOptions zero{PipelineMode::kTrain, PerturbationSpec{0.0, 3}, {}};
  EXPECT_EQ(run_pipeline(layers, cs, p, roi, zero).domain.values, plain.domain.values);

  PipelineOptions train{PipelineMode::kTrain, PerturbationSpec{0.5, 3}, {}};
  const auto a = run_pipeline(layers, cs, p, roi, train);
  EXPECT_NE(a.domain.values, plain.domain.values);
  EXPECT_EQ(run_pipeline(layers, cs, p, roi, train).domain.values, a.domain.values);

  PipelineOptions masked{PipelineMode::kTrain, PerturbationSpec{0.5, 3}, {false, true}};
  const auto m = run_pipeline(layers, cs, p, roi, masked);
  EXPECT_EQ(m.layer_features[0].values, plain.layer_features[0].values);
  EXPECT_NE(m.layer_features[1].values, plain.layer_features[1].values);
  masked.perturb_layers = {true};
  EXPECT_THROW(run_pipeline(layers, cs, p, roi, masked), ShapeError);
  EXPECT_NE(layer_seed(3, 0), layer_seed(3, 1));
}

TEST(Pipeline, ShapeErrors) {
  const auto p = simple_params({4}, 3, 3, 9, 0.5);
  const std::vector<FeatureMap> layers = {random_map(3, 3, 2, 1)};
  const auto roi = emb({1, 1, 1}, EmbeddingRole::kRoi);
  EXPECT_THROW(run_pipeline(layers, std::vector<Embedding>{}, p, roi), ShapeError);
  EXPECT_THROW(run_pipeline(layers, std::vector<Embedding>{emb({1, 2})}, p, roi), ShapeError);
  const std::vector<FeatureMap> two = {layers[0], layers[0]};
  EXPECT_THROW(run_pipeline(two, std::vector<Embedding>{emb({1, 2, 3})}, p, roi), ShapeError);
}

}  // namespace
}  // namespace odkit::embedkit
