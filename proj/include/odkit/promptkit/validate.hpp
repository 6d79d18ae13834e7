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

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "odkit/promptkit/descriptor.hpp"

namespace odkit::promptkit {

/// Lower-case ASCII, collapse whitespace runs to one space, trim.
std::string normalize_text(std::string_view text);

class ColorBlocklist {
 public:
  explicit ColorBlocklist(std::vector<std::string> terms);

  /// The bundled list of common color words.
  static ColorBlocklist builtin();
  /// One term per line; blank lines and '#' comments are skipped.
  static ColorBlocklist load(const std::filesystem::path& path);

  const std::vector<std::string>& terms() const { return terms_; }

  /// Blocklisted terms that occur in `text` as whole words, case-insensitive,
  /// in blocklist order.
  std::vector<std::string> hits(std::string_view text) const;

 private:
  std::vector<std::string> terms_;
};

namespace rule {
inline constexpr std::string_view kColorTerm = "color-term";
inline constexpr std::string_view kDuplicateAttribute = "duplicate-attribute";
inline constexpr std::string_view kNoAttributes = "no-attributes";
inline constexpr std::string_view kEmptyAttribute = "empty-attribute";
inline constexpr std::string_view kEmptyCategory = "empty-category";
}  // namespace rule

struct Violation {
  std::string rule;
  std::string text;    // offending attribute
  std::string detail;  // e.g. the matched color term

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct ValidationReport {
  std::string category;
  std::vector<Violation> violations;

  bool passed() const { return violations.empty(); }
};

ValidationReport validate(const CategoryDescriptor& descriptor, const ColorBlocklist& blocklist);
std::vector<ValidationReport> validate_all(std::span<const CategoryDescriptor> descriptors,
                                           const ColorBlocklist& blocklist);

nlohmann::json report_to_json(const ValidationReport& report);

}  // namespace odkit::promptkit
