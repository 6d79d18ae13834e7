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
#include <string>
#include <string_view>

namespace odkit {

/// 64-bit FNV-1a over raw bytes. Stable across platforms and runs.
std::uint64_t fnv1a64(std::string_view bytes);

/// SplitMix64 finalizer; a bijective bit mixer.
std::uint64_t mix64(std::uint64_t value);

/// Combines a global seed with per-item keys into an order-independent seed.
std::uint64_t derive_seed(std::uint64_t global_seed, std::uint64_t key_a, std::uint64_t key_b = 0);

/// Lowercase 16-digit hex rendering of a 64-bit value.
std::string hex64(std::uint64_t value);

}  // namespace odkit
