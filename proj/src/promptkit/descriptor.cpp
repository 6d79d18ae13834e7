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

#include "odkit/promptkit/descriptor.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>

#include <fmt/format.h>

namespace odkit::promptkit {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool starts_with_any(std::string_view word, std::span<const std::string_view> prefixes) {
  return std::any_of(prefixes.begin(), prefixes.end(), [&](std::string_view p) { return word.starts_with(p); });
}

// Consonant-initial words that take "an" and vowel-initial words that take "a".
constexpr std::array<std::string_view, 5> kSilentH = {"hour", "honest", "honor", "honour", "heir"};
constexpr std::array<std::string_view, 11> kYooSound = {"uni", "use", "usu", "uten", "uku", "uri",
                                                       "eu",  "ewe", "one", "once", "ufo"};

}  // namespace

std::string_view verb_name(Verb verb) { return verb == Verb::kIs ? "is" : "has"; }

Verb parse_verb(std::string_view text) {
  const auto v = lower(trim(text));
  if (v == "has") return Verb::kHas;
  if (v == "is") return Verb::kIs;
  throw DescriptorError(fmt::format("verb must be 'has' or 'is', got '{}'", text));
}

std::string display_name(std::string_view category) {
  std::string name(trim(category));
  if (auto open = name.find("_("); open != std::string::npos && name.back() == ')') name.erase(open);
  std::replace(name.begin(), name.end(), '_', ' ');
  return std::string(trim(name));
}

std::string_view indefinite_article(std::string_view word) {
  const auto w = lower(trim(word));
  if (w.empty()) return "A";
  if (starts_with_any(w, kSilentH)) return "An";
  if (starts_with_any(w, kYooSound)) return "A";
  return std::string_view("aeiou").find(w.front()) != std::string_view::npos ? "An" : "A";
}

std::string render_prompt(const CategoryDescriptor& descriptor) { return render_prompt(descriptor, descriptor.verb); }

std::string render_prompt(const CategoryDescriptor& descriptor, Verb verb) {
  if (descriptor.attributes.empty()) {
    throw DescriptorError(fmt::format("descriptor for '{}' has no attributes", descriptor.category));
  }
  const auto name = display_name(descriptor.category);
  std::string out = fmt::format("{} {} {} ", indefinite_article(name), name, verb_name(verb));
  const auto n = descriptor.attributes.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) out += (i + 1 == n) ? " and " : ", ";
    out += trim(descriptor.attributes[i]);
  }
  return out;
}

CategoryDescriptor parse_prompt(std::string_view prompt) {
  auto text = trim(prompt);
  if (!text.empty() && text.back() == '.') text.remove_suffix(1);

  const auto space = text.find(' ');
  const auto article = lower(text.substr(0, space));
  if (space == std::string_view::npos || (article != "a" && article != "an")) {
    throw DescriptorError(fmt::format("prompt does not start with an article: '{}'", prompt));
  }
  text = text.substr(space + 1);

  const auto has_pos = text.find(" has ");
  const auto is_pos = text.find(" is ");
  const auto pos = std::min(has_pos, is_pos);
  if (pos == std::string_view::npos) throw DescriptorError(fmt::format("prompt has no 'has'/'is': '{}'", prompt));

  CategoryDescriptor d;
  d.category = std::string(trim(text.substr(0, pos)));
  d.verb = pos == has_pos ? Verb::kHas : Verb::kIs;
  const auto rest = trim(text.substr(pos + (d.verb == Verb::kHas ? 5 : 4)));

  std::vector<std::string> pieces;
  std::size_t start = 0;
  for (auto comma = rest.find(", "); comma != std::string_view::npos; comma = rest.find(", ", start)) {
    pieces.emplace_back(rest.substr(start, comma - start));
    start = comma + 2;
  }
  const auto last = rest.substr(start);
  if (const auto conj = last.rfind(" and "); conj != std::string_view::npos) {
    pieces.emplace_back(last.substr(0, conj));
    pieces.emplace_back(last.substr(conj + 5));
  } else if (pieces.empty()) {
    pieces.emplace_back(last);
  } else {
    // "x, y" without a final conjunction is one attribute containing a comma.
    pieces = {std::string(rest)};
  }
  for (auto& p : pieces) d.attributes.emplace_back(trim(p));
  if (d.attributes.empty() || d.attributes.front().empty()) {
    throw DescriptorError(fmt::format("prompt has no attributes: '{}'", prompt));
  }
  return d;
}

nlohmann::json descriptors_to_json(std::span<const CategoryDescriptor> descriptors) {
  auto list = nlohmann::json::array();
  for (const auto& d : descriptors) {
    list.push_back({{"category", d.category}, {"verb", verb_name(d.verb)}, {"attributes", d.attributes}});
  }
  return {{"descriptors", std::move(list)}};
}

CategoryDescriptor descriptor_from_json(const nlohmann::json& entry) {
  if (!entry.is_object()) throw DescriptorError("descriptor entry must be an object");
  if (!entry.contains("category") || !entry["category"].is_string()) {
    throw DescriptorError("descriptor entry needs a string 'category'");
  }
  CategoryDescriptor d;
  d.category = entry["category"].get<std::string>();
  if (!entry.contains("attributes") || !entry["attributes"].is_array()) {
    throw DescriptorError(fmt::format("descriptor '{}' needs an 'attributes' array", d.category));
  }
  for (const auto& a : entry["attributes"]) {
    if (!a.is_string()) throw DescriptorError(fmt::format("descriptor '{}' has a non-string attribute", d.category));
    d.attributes.push_back(a.get<std::string>());
  }
  if (entry.contains("verb")) {
    if (!entry["verb"].is_string()) throw DescriptorError(fmt::format("descriptor '{}' verb must be a string", d.category));
    d.verb = parse_verb(entry["verb"].get<std::string>());
  }
  return d;
}

std::vector<CategoryDescriptor> descriptors_from_json(const nlohmann::json& doc) {
  const nlohmann::json* list = &doc;
  if (doc.is_object()) {
    if (!doc.contains("descriptors")) throw DescriptorError("descriptor file needs a 'descriptors' array");
    list = &doc["descriptors"];
  }
  if (!list->is_array()) throw DescriptorError("'descriptors' must be an array");
  std::vector<CategoryDescriptor> out;
  for (const auto& entry : *list) out.push_back(descriptor_from_json(entry));
  return out;
}

std::vector<CategoryDescriptor> load_descriptors(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DescriptorError(fmt::format("cannot open {}", path.string()));
  try {
    return descriptors_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    throw DescriptorError(fmt::format("{}: {}", path.string(), e.what()));
  }
}

void save_descriptors(const std::filesystem::path& path, std::span<const CategoryDescriptor> descriptors) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw DescriptorError(fmt::format("cannot open {} for writing", path.string()));
  out << descriptors_to_json(descriptors).dump(2) << '\n';
}

}  // namespace odkit::promptkit
