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
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "odkit/imaging/image.hpp"

namespace odkit::imaging {

enum class DegradationKind {
  kHaze,
  kIllumination,
  kLowResolution,
  kGaussianNoise,
  kGaussianBlur,
  kSaltPepper,
  kMotionBlur,
  kDefocus,
  kRain,
};

inline constexpr int kImagingConditionCount = 9;

std::string_view kind_name(DegradationKind kind);
DegradationKind parse_kind(std::string_view name);

/// One imaging-condition transform with its parameters and seed.
///
/// Parameter names per kind:
///   haze            m, airlight (1.0), depth (10) or depth_near/depth_far
///   illumination    gamma
///   low_resolution  factor
///   gaussian_noise  k (0 means identity)
///   gaussian_blur   sigma
///   salt_pepper     density
///   motion_blur     length, angle (omitted: seeded draw in [0, 180))
///   defocus         radius
///   rain            intensity, streak_length (15), angle (80), quantile (0.985)
struct DegradationSpec {
  DegradationKind kind = DegradationKind::kHaze;
  std::map<std::string, double> params;
  std::uint64_t seed = 0;
  std::optional<std::string> severity_preset;

  /// Throws ParameterError on unknown names, missing required names or
  /// out-of-domain values.
  void validate() const;

  /// True when the parameters select the byte-identical neutral setting.
  bool is_identity() const;

  nlohmann::json to_json() const;
  static DegradationSpec from_json(const nlohmann::json& j);

  friend bool operator==(const DegradationSpec&, const DegradationSpec&) = default;
};

/// Runs the kernel selected by spec.kind. `spec.seed` drives any randomness.
Image apply(const Image& image, const DegradationSpec& spec);

/// Named severity presets. Preset files are JSON objects keyed by preset
/// name, each value {"kind": ..., "params": {...}}.
class PresetRegistry {
 public:
  /// Shipped presets: haze-moderate/haze-severe (m = 0.05/0.08),
  /// noise-moderate/noise-severe (k = 0.04/0.06) and one toolkit default per
  /// remaining condition.
  static PresetRegistry builtin();
  static PresetRegistry from_json(const nlohmann::json& j);
  static PresetRegistry load(const std::filesystem::path& path);

  /// Adds or replaces a preset; validates it first.
  void add(const std::string& name, DegradationSpec spec);
  /// Presets from `other` override same-named entries here.
  void merge(const PresetRegistry& other);

  std::optional<DegradationSpec> find(std::string_view name) const;
  std::vector<std::string> names() const;
  nlohmann::json to_json() const;

 private:
  std::map<std::string, DegradationSpec, std::less<>> presets_;
};

}  // namespace odkit::imaging
