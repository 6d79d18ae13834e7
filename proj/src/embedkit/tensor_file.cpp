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

#include "odkit/embedkit/tensor_file.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>
#include <set>

#include <fmt/format.h>

namespace odkit::embedkit {

std::size_t Tensor::numel() const {
  std::size_t n = 1;
  for (auto d : dims) n *= static_cast<std::size_t>(d);
  return n;
}

const Tensor* TensorFile::find(const std::string& name) const {
  for (const auto& [key, tensor] : tensors) {
    if (key == name) return &tensor;
  }
  return nullptr;
}

const Tensor& TensorFile::at(const std::string& name) const {
  if (const auto* t = find(name)) return *t;
  throw TensorFormatError(fmt::format("missing tensor '{}'", name));
}

void TensorFile::add(std::string name, Tensor tensor) {
  if (find(name) != nullptr) throw TensorFormatError(fmt::format("duplicate tensor '{}'", name));
  if (tensor.numel() != tensor.values.size()) {
    throw TensorFormatError(fmt::format("tensor '{}' has {} values for {} elements", name, tensor.values.size(),
                                        tensor.numel()));
  }
  tensors.emplace_back(std::move(name), std::move(tensor));
}

namespace {

class Writer {
 public:
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void f32(float v) { u32(std::bit_cast<std::uint32_t>(v)); }
  void bytes(const void* data, std::size_t n) {
    const auto* p = static_cast<const std::uint8_t*>(data);
    out_.insert(out_.end(), p, p + n);
  }
  std::vector<std::uint8_t> take() { return std::move(out_); }

 private:
  std::vector<std::uint8_t> out_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> in) : in_(in) {}

  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(in_[pos_ + i]) << (8 * i);
    pos_ += 4;
    return v;
  }
  std::uint64_t u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(in_[pos_ + i]) << (8 * i);
    pos_ += 8;
    return v;
  }
  float f32() { return std::bit_cast<float>(u32()); }
  std::string str(std::size_t n) {
    need(n);
    std::string s(reinterpret_cast<const char*>(in_.data() + pos_), n);
    pos_ += n;
    return s;
  }
  std::size_t remaining() const { return in_.size() - pos_; }

 private:
  void need(std::size_t n) const {
    if (remaining() < n) throw TensorFormatError("tensor file truncated");
  }

  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<std::uint8_t> encode_tensor_file(const TensorFile& file) {
  Writer w;
  w.bytes(kTensorMagic.data(), kTensorMagic.size());
  w.u32(kTensorVersion);
  w.u32(static_cast<std::uint32_t>(file.metadata.size()));
  w.bytes(file.metadata.data(), file.metadata.size());
  w.u32(static_cast<std::uint32_t>(file.tensors.size()));
  for (const auto& [name, tensor] : file.tensors) {
    if (tensor.numel() != tensor.values.size()) {
      throw TensorFormatError(fmt::format("tensor '{}' has {} values for {} elements", name, tensor.values.size(),
                                          tensor.numel()));
    }
    w.u32(static_cast<std::uint32_t>(name.size()));
    w.bytes(name.data(), name.size());
    w.u32(kDtypeFloat32);
    w.u32(static_cast<std::uint32_t>(tensor.dims.size()));
    for (auto d : tensor.dims) w.u64(d);
  }
  for (const auto& entry : file.tensors) {
    for (float v : entry.second.values) w.f32(v);
  }
  return w.take();
}

TensorFile decode_tensor_file(std::span<const std::uint8_t> bytes) {
  Reader r(bytes);
  if (r.str(kTensorMagic.size()) != std::string(kTensorMagic.begin(), kTensorMagic.end())) {
    throw TensorFormatError("bad magic, not a tensor file");
  }
  if (auto version = r.u32(); version != kTensorVersion) {
    throw TensorFormatError(fmt::format("unsupported tensor file version {}", version));
  }
  TensorFile file;
  file.metadata = r.str(r.u32());

  const std::uint32_t count = r.u32();
  std::vector<std::pair<std::string, std::vector<std::uint64_t>>> manifest;
  std::set<std::string> names;
  for (std::uint32_t i = 0; i < count; ++i) {
    std::string name = r.str(r.u32());
    if (!names.insert(name).second) throw TensorFormatError(fmt::format("duplicate tensor '{}'", name));
    if (auto dtype = r.u32(); dtype != kDtypeFloat32) {
      throw TensorFormatError(fmt::format("tensor '{}' has unsupported dtype {}", name, dtype));
    }
    const std::uint32_t rank = r.u32();
    std::vector<std::uint64_t> dims(rank);
    for (auto& d : dims) d = r.u64();
    manifest.emplace_back(std::move(name), std::move(dims));
  }

  for (auto& [name, dims] : manifest) {
    std::uint64_t numel = 1;
    for (auto d : dims) {
      if (d != 0 && numel > std::numeric_limits<std::uint64_t>::max() / d) {
        throw TensorFormatError(fmt::format("tensor '{}' dims overflow", name));
      }
      numel *= d;
    }
    if (numel > r.remaining() / 4) throw TensorFormatError(fmt::format("tensor '{}' payload truncated", name));
    Tensor t;
    t.dims = std::move(dims);
    t.values.resize(static_cast<std::size_t>(numel));
    for (auto& v : t.values) v = r.f32();
    file.tensors.emplace_back(std::move(name), std::move(t));
  }
  if (r.remaining() != 0) throw TensorFormatError("trailing bytes after tensor payloads");
  return file;
}

void write_tensor_file(const std::filesystem::path& path, const TensorFile& file) {
  const auto bytes = encode_tensor_file(file);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw TensorFormatError(fmt::format("cannot open {} for writing", path.string()));
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw TensorFormatError(fmt::format("write failed: {}", path.string()));
}

TensorFile read_tensor_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw TensorFormatError(fmt::format("cannot open {}", path.string()));
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  try {
    return decode_tensor_file(bytes);
  } catch (const TensorFormatError& e) {
    throw TensorFormatError(fmt::format("{}: {}", path.string(), e.what()));
  }
}

}  // namespace odkit::embedkit
