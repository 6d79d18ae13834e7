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

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace odkit::embedkit {

class TensorFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense float32 tensor, row-major over `dims`.
struct Tensor {
  std::vector<std::uint64_t> dims;
  std::vector<float> values;

  std::size_t numel() const;
  friend bool operator==(const Tensor&, const Tensor&) = default;
};

/// Binary tensor container (all integers little-endian):
///
///   magic    4 bytes  "ODKT"
///   version  u32      1
///   meta_len u32, then meta_len bytes of UTF-8 metadata (JSON by convention)
///   count    u32
///   count manifest entries:
///     name_len u32, name bytes, dtype u32 (1 = float32), rank u32,
///     rank x u64 dims
///   payloads in manifest order, numel x float32 each
struct TensorFile {
  std::string metadata;
  std::vector<std::pair<std::string, Tensor>> tensors;

  const Tensor* find(const std::string& name) const;
  /// Throws TensorFormatError naming the tensor when absent.
  const Tensor& at(const std::string& name) const;
  void add(std::string name, Tensor tensor);
};

inline constexpr std::array<char, 4> kTensorMagic = {'O', 'D', 'K', 'T'};
inline constexpr std::uint32_t kTensorVersion = 1;
inline constexpr std::uint32_t kDtypeFloat32 = 1;

std::vector<std::uint8_t> encode_tensor_file(const TensorFile& file);
TensorFile decode_tensor_file(std::span<const std::uint8_t> bytes);

void write_tensor_file(const std::filesystem::path& path, const TensorFile& file);
TensorFile read_tensor_file(const std::filesystem::path& path);

}  // namespace odkit::embedkit
