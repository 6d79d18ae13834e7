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

#include "odkit/imaging/resample.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace odkit::imaging {

double cubic_weight(double x) {
  constexpr double a = -0.5;
  x = std::abs(x);
  if (x <= 1.0) return ((a + 2.0) * x - (a + 3.0)) * x * x + 1.0;
  if (x < 2.0) return ((a * x - 5.0 * a) * x + 8.0 * a) * x - 4.0 * a;
  return 0.0;
}

namespace {

struct Contribution {
  std::vector<int> index;
  std::vector<double> weight;
};

std::vector<Contribution> contributions(int in_size, int out_size) {
  const double scale = static_cast<double>(in_size) / out_size;
  const double stretch = std::max(scale, 1.0);
  const double support = 2.0 * stretch;
  std::vector<Contribution> table(static_cast<std::size_t>(out_size));
  for (int o = 0; o < out_size; ++o) {
    const double center = (o + 0.5) * scale - 0.5;
    const int first = static_cast<int>(std::floor(center - support)) + 1;
    const int last = static_cast<int>(std::floor(center + support));
    Contribution& c = table[static_cast<std::size_t>(o)];
    double total = 0.0;
    for (int i = first; i <= last; ++i) {
      const double w = cubic_weight((center - i) / stretch);
      if (w == 0.0) continue;
      c.index.push_back(reflect_index(i, in_size));
      c.weight.push_back(w);
      total += w;
    }
    for (double& w : c.weight) w /= total;
  }
  return table;
}

}  // namespace

FloatImage resize_bicubic(const FloatImage& image, int out_width, int out_height) {
  if (out_width < 1 || out_height < 1) throw std::invalid_argument("resize_bicubic: empty target size");
  const auto columns = contributions(image.width, out_width);
  const auto rows = contributions(image.height, out_height);

  FloatImage horizontal(out_width, image.height);
  for (int y = 0; y < image.height; ++y) {
    for (int x = 0; x < out_width; ++x) {
      const Contribution& c = columns[static_cast<std::size_t>(x)];
      double acc[3] = {0.0, 0.0, 0.0};
      for (std::size_t k = 0; k < c.index.size(); ++k) {
        for (int ch = 0; ch < 3; ++ch) acc[ch] += c.weight[k] * image.at(c.index[k], y, ch);
      }
      for (int ch = 0; ch < 3; ++ch) horizontal.at(x, y, ch) = static_cast<float>(acc[ch]);
    }
  }
  FloatImage out(out_width, out_height);
  for (int y = 0; y < out_height; ++y) {
    const Contribution& c = rows[static_cast<std::size_t>(y)];
    for (int x = 0; x < out_width; ++x) {
      double acc[3] = {0.0, 0.0, 0.0};
      for (std::size_t k = 0; k < c.index.size(); ++k) {
        for (int ch = 0; ch < 3; ++ch) acc[ch] += c.weight[k] * horizontal.at(x, c.index[k], ch);
      }
      for (int ch = 0; ch < 3; ++ch) out.at(x, y, ch) = static_cast<float>(acc[ch]);
    }
  }
  return out;
}

}  // namespace odkit::imaging
