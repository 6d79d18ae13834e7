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
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace odkit::promptkit {

class DescriptorError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Verb { kHas, kIs };

std::string_view verb_name(Verb verb);
/// Accepts "has" or "is", case-insensitive.
Verb parse_verb(std::string_view text);

struct CategoryDescriptor {
  std::string category;
  std::vector<std::string> attributes;
  Verb verb = Verb::kHas;

  friend bool operator==(const CategoryDescriptor&, const CategoryDescriptor&) = default;
};

/// LVIS-style names to prose: "baseball_cap" -> "baseball cap",
/// "bow_(weapon)" -> "bow".
std::string display_name(std::string_view category);

/// "A" or "An" for the given word, using the first letter plus a small
/// exception table for silent-h and yoo-sound words.
std::string_view indefinite_article(std::string_view word);

/// "<A|An> <category> <verb> <a1>, <a2> and <a3>". Throws DescriptorError
/// when there are no attributes.
std::string render_prompt(const CategoryDescriptor& descriptor);
std::string render_prompt(const CategoryDescriptor& descriptor, Verb verb);

/// Inverse of render_prompt up to attribute boundaries: attributes that
/// themselves contain " and " or ", " are split, which leaves the rendered
/// sentence unchanged.
CategoryDescriptor parse_prompt(std::string_view prompt);

/// {"descriptors": [{"category", "verb", "attributes"}]}.
nlohmann::json descriptors_to_json(std::span<const CategoryDescriptor> descriptors);
std::vector<CategoryDescriptor> descriptors_from_json(const nlohmann::json& doc);
CategoryDescriptor descriptor_from_json(const nlohmann::json& entry);
std::vector<CategoryDescriptor> load_descriptors(const std::filesystem::path& path);
void save_descriptors(const std::filesystem::path& path, std::span<const CategoryDescriptor> descriptors);

}  // namespace odkit::promptkit
