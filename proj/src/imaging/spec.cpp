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

#include "odkit/imaging/spec.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <set>
#include <utility>

#include "odkit/common/hash.hpp"
#include "odkit/common/rng.hpp"
#include "odkit/imaging/degrade.hpp"

namespace odkit::imaging {

namespace {

constexpr std::array<std::pair<DegradationKind, std::string_view>, kImagingConditionCount> kKindNames = {{
    {DegradationKind::kHaze, "haze"},
    {DegradationKind::kIllumination, "illumination"},
    {DegradationKind::kLowResolution, "low_resolution"},
    {DegradationKind::kGaussianNoise, "gaussian_noise"},
    {DegradationKind::kGaussianBlur, "gaussian_blur"},
    {DegradationKind::kSaltPepper, "salt_pepper"},
    {DegradationKind::kMotionBlur, "motion_blur"},
    {DegradationKind::kDefocus, "defocus"},
    {DegradationKind::kRain, "rain"},
}};

struct ParamRule {
  std::string_view name;
  bool required;
};

std::vector<ParamRule> rules_for(DegradationKind kind) {
  switch (kind) {
    case DegradationKind::kHaze:
      return {{"m", true}, {"airlight", false}, {"depth", false}, {"depth_near", false}, {"depth_far", false}};
    case DegradationKind::kIllumination:
      return {{"gamma", true}};
    case DegradationKind::kLowResolution:
      return {{"factor", true}};
    case DegradationKind::kGaussianNoise:
      return {{"k", true}};
    case DegradationKind::kGaussianBlur:
      return {{"sigma", true}};
    case DegradationKind::kSaltPepper:
      return {{"density", true}};
    case DegradationKind::kMotionBlur:
      return {{"length", true}, {"angle", false}};
    case DegradationKind::kDefocus:
      return {{"radius", true}};
    case DegradationKind::kRain:
      return {{"intensity", true}, {"streak_length", false}, {"angle", false}, {"quantile", false}};
  }
  return {};
}

double param_or(const DegradationSpec& spec, const std::string& name, double fallback) {
  const auto it = spec.params.find(name);
  return it == spec.params.end() ? fallback : it->second;
}

void check(bool condition, DegradationKind kind, const std::string& message) {
  if (!condition) throw ParameterError(std::string(kind_name(kind)) + ": " + message);
}

bool is_integer(double v) { return std::isfinite(v) && std::floor(v) == v; }

int motion_length(const DegradationSpec& spec) { return static_cast<int>(spec.params.at("length")); }

double motion_angle(const DegradationSpec& spec) {
  if (const auto it = spec.params.find("angle"); it != spec.params.end()) return it->second;
  // Unspecified angle: seeded per-image draw in [0, 180).
  Rng rng(derive_seed(spec.seed, fnv1a64("motion-angle")));
  return 180.0 * rng.uniform();
}

RainParams rain_params(const DegradationSpec& spec) {
  RainParams params;
  params.intensity = spec.params.at("intensity");
  params.streak_length = static_cast<int>(param_or(spec, "streak_length", params.streak_length));
  params.angle_degrees = param_or(spec, "angle", params.angle_degrees);
  params.quantile = param_or(spec, "quantile", params.quantile);
  return params;
}

}  // namespace

std::string_view kind_name(DegradationKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

DegradationKind parse_kind(std::string_view name) {
  for (const auto& [k, n] : kKindNames) {
    if (n == name) return k;
  }
  throw ParameterError("unknown degradation kind '" + std::string(name) + "'");
}

void DegradationSpec::validate() const {
  const auto rules = rules_for(kind);
  for (const auto& [name, value] : params) {
    const bool known = std::any_of(rules.begin(), rules.end(), [&](const ParamRule& r) { return r.name == name; });
    check(known, kind, "unknown parameter '" + name + "'");
    check(std::isfinite(value), kind, "parameter '" + name + "' must be finite");
  }
  for (const auto& rule : rules) {
    check(!rule.required || params.contains(std::string(rule.name)), kind,
          "missing parameter '" + std::string(rule.name) + "'");
  }
  switch (kind) {
    case DegradationKind::kHaze: {
      check(params.at("m") >= 0.0, kind, "m must be >= 0");
      const double airlight = param_or(*this, "airlight", 1.0);
      check(airlight >= 0.0 && airlight <= 1.0, kind, "airlight must lie in [0, 1]");
      check(param_or(*this, "depth", 10.0) > 0.0, kind, "depth must be > 0");
      const bool near = params.contains("depth_near");
      const bool far = params.contains("depth_far");
      check(near == far, kind, "depth_near and depth_far must be given together");
      check(!(near && params.contains("depth")), kind, "depth conflicts with depth_near/depth_far");
      if (near) check(params.at("depth_near") > 0.0 && params.at("depth_far") > 0.0, kind, "depths must be > 0");
      break;
    }
    case DegradationKind::kIllumination:
      check(params.at("gamma") > 0.0, kind, "gamma must be > 0");
      break;
    case DegradationKind::kLowResolution:
      check(is_integer(params.at("factor")) && params.at("factor") >= 1.0, kind, "factor must be an integer >= 1");
      break;
    case DegradationKind::kGaussianNoise:
      check(params.at("k") >= 0.0, kind, "k must be >= 0 (0 selects identity)");
      break;
    case DegradationKind::kGaussianBlur:
      check(params.at("sigma") >= 0.0, kind, "sigma must be >= 0");
      break;
    case DegradationKind::kSaltPepper:
      check(params.at("density") >= 0.0 && params.at("density") <= 1.0, kind, "density must lie in [0, 1]");
      break;
    case DegradationKind::kMotionBlur:
      check(is_integer(params.at("length")) && params.at("length") >= 1.0, kind, "length must be an integer >= 1");
      break;
    case DegradationKind::kDefocus:
      check(params.at("radius") >= 0.0, kind, "radius must be >= 0");
      break;
    case DegradationKind::kRain: {
      const RainParams p = rain_params(*this);
      check(p.intensity >= 0.0 && p.intensity <= 1.0, kind, "intensity must lie in [0, 1]");
      check(p.quantile > 0.0 && p.quantile < 1.0, kind, "quantile must lie in (0, 1)");
      check(is_integer(param_or(*this, "streak_length", 15)) && p.streak_length >= 1, kind,
            "streak_length must be an integer >= 1");
      break;
    }
  }
}

bool DegradationSpec::is_identity() const {
  switch (kind) {
    case DegradationKind::kHaze:
      return params.at("m") == 0.0;
    case DegradationKind::kIllumination:
      return params.at("gamma") == 1.0;
    case DegradationKind::kLowResolution:
      return params.at("factor") == 1.0;
    case DegradationKind::kGaussianNoise:
      return params.at("k") == 0.0;
    case DegradationKind::kGaussianBlur:
      return params.at("sigma") < 0.01;
    case DegradationKind::kSaltPepper:
      return params.at("density") == 0.0;
    case DegradationKind::kMotionBlur:
      return params.at("length") == 1.0;
    case DegradationKind::kDefocus:
      return params.at("radius") < 1.0;
    case DegradationKind::kRain:
      return params.at("intensity") == 0.0;
  }
  return false;
}

nlohmann::json DegradationSpec::to_json() const {
  nlohmann::json j;
  j["kind"] = std::string(kind_name(kind));
  j["params"] = params;
  j["seed"] = seed;
  if (severity_preset) j["preset"] = *severity_preset;
  return j;
}

DegradationSpec DegradationSpec::from_json(const nlohmann::json& j) {
  try {
    DegradationSpec spec;
    spec.kind = parse_kind(j.at("kind").get<std::string>());
    if (j.contains("params")) spec.params = j.at("params").get<std::map<std::string, double>>();
    if (j.contains("seed")) spec.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("preset")) spec.severity_preset = j.at("preset").get<std::string>();
    return spec;
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("malformed degradation spec: ") + e.what());
  }
}

Image apply(const Image& image, const DegradationSpec& spec) {
  spec.validate();
  if (spec.is_identity()) return image;
  const auto& p = spec.params;
  switch (spec.kind) {
    case DegradationKind::kHaze: {
      DepthModel depth = ConstantDepth{param_or(spec, "depth", 10.0)};
      if (p.contains("depth_near")) depth = VerticalGradientDepth{p.at("depth_near"), p.at("depth_far")};
      return apply_haze(image, p.at("m"), param_or(spec, "airlight", 1.0), depth);
    }
    case DegradationKind::kIllumination:
      return apply_gamma(image, p.at("gamma"));
    case DegradationKind::kLowResolution:
      return apply_low_resolution(image, static_cast<int>(p.at("factor")));
    case DegradationKind::kGaussianNoise:
      return apply_gaussian_noise(image, p.at("k"), spec.seed);
    case DegradationKind::kGaussianBlur:
      return apply_gaussian_blur(image, p.at("sigma"));
    case DegradationKind::kSaltPepper:
      return apply_salt_pepper(image, p.at("density"), spec.seed);
    case DegradationKind::kMotionBlur:
      return apply_motion_blur(image, motion_length(spec), motion_angle(spec));
    case DegradationKind::kDefocus:
      return apply_defocus(image, p.at("radius"));
    case DegradationKind::kRain:
      return apply_rain(image, rain_params(spec), spec.seed);
  }
  throw ParameterError("unhandled degradation kind");
}

PresetRegistry PresetRegistry::builtin() {
  PresetRegistry registry;
  const auto add = [&](const std::string& name, DegradationKind kind, std::map<std::string, double> params) {
    registry.add(name, DegradationSpec{kind, std::move(params), 0, std::nullopt});
  };
  add("haze-moderate", DegradationKind::kHaze, {{"m", 0.05}});
  add("haze-severe", DegradationKind::kHaze, {{"m", 0.08}});
  add("noise-moderate", DegradationKind::kGaussianNoise, {{"k", 0.04}});
  add("noise-severe", DegradationKind::kGaussianNoise, {{"k", 0.06}});
  // Toolkit defaults for the remaining conditions.
  add("rain", DegradationKind::kRain, {{"intensity", 0.6}, {"streak_length", 15}, {"angle", 80}, {"quantile", 0.985}});
  add("illumination-dark", DegradationKind::kIllumination, {{"gamma", 2.2}});
  add("illumination-bright", DegradationKind::kIllumination, {{"gamma", 0.45}});
  add("low-resolution", DegradationKind::kLowResolution, {{"factor", 4}});
  add("gaussian-blur", DegradationKind::kGaussianBlur, {{"sigma", 2.0}});
  add("salt-pepper", DegradationKind::kSaltPepper, {{"density", 0.05}});
  add("motion-blur", DegradationKind::kMotionBlur, {{"length", 15}});
  add("defocus", DegradationKind::kDefocus, {{"radius", 5}});
  return registry;
}

void PresetRegistry::add(const std::string& name, DegradationSpec spec) {
  if (name.empty()) throw ParameterError("preset name must not be empty");
  spec.validate();
  spec.severity_preset = name;
  presets_[name] = std::move(spec);
}

void PresetRegistry::merge(const PresetRegistry& other) {
  for (const auto& [name, spec] : other.presets_) presets_[name] = spec;
}

PresetRegistry PresetRegistry::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParameterError("preset file must be a JSON object keyed by preset name");
  PresetRegistry registry;
  for (const auto& [name, value] : j.items()) registry.add(name, DegradationSpec::from_json(value));
  return registry;
}

PresetRegistry PresetRegistry::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open preset file " + path.string());
  try {
    return from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParameterError("preset file " + path.string() + ": " + e.what());
  }
}

std::optional<DegradationSpec> PresetRegistry::find(std::string_view name) const {
  const auto it = presets_.find(name);
  if (it == presets_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> PresetRegistry::names() const {
  std::vector<std::string> out;
  for (const auto& [name, spec] : presets_) out.push_back(name);
  return out;
}

nlohmann::json PresetRegistry::to_json() const {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [name, spec] : presets_) {
    j[name] = {{"kind", std::string(kind_name(spec.kind))}, {"params", spec.params}};
  }
  return j;
}

}  // namespace odkit::imaging
