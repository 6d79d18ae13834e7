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

#include "odkit/imaging/image.hpp"

namespace odkit::imaging {

/// Catmull-Rom (a = -0.5) cubic weight.
double cubic_weight(double x);

/// Separable bicubic resize. When shrinking, the kernel is stretched by the
/// scale factor (antialiasing). Weights are renormalized per output sample.
FloatImage resize_bicubic(const FloatImage& image, int out_width, int out_height);

}  // namespace odkit::imaging
