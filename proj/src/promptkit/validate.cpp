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

#include "odkit/promptkit/validate.hpp"

#include <cctype>
#include <fstream>
#include <map>

#include <fmt/format.h>

namespace odkit::promptkit {

namespace {

constexpr std::string_view kBuiltinColors[] = {
    "red",    "orange", "yellow",    "green",    "blue",     "purple",  "violet",     "pink",
    "brown",  "black",  "white",     "gray",     "grey",     "silver",  "gold",       "golden",
    "beige",  "tan",    "maroon",    "navy",     "teal",     "turquoise", "cyan",     "magenta",
    "crimson", "scarlet", "ivory",   "khaki",    "olive",    "lavender", "indigo",    "bronze",
    "colorful", "colourful", "multicolored", "multicoloured",
};

bool is_word_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }

}  // namespace

std::string normalize_text(std::string_view text) {
  std::string out;
  bool pending_space = false;
  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (std::isspace(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(static_cast<char>(std::tolower(c)));
  }
  return out;
}

ColorBlocklist::ColorBlocklist(std::vector<std::string> terms) {
  for (auto& t : terms) {
    auto n = normalize_text(t);
    if (!n.empty()) terms_.push_back(std::move(n));
  }
}

ColorBlocklist ColorBlocklist::builtin() { return ColorBlocklist({std::begin(kBuiltinColors), std::end(kBuiltinColors)}); }

ColorBlocklist ColorBlocklist::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(fmt::format("cannot open blocklist {}", path.string()));
  std::vector<std::string> terms;
  for (std::string line; std::getline(in, line);) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    terms.push_back(line);
  }
  return ColorBlocklist(std::move(terms));
}

std::vector<std::string> ColorBlocklist::hits(std::string_view text) const {
  const auto haystack = normalize_text(text);
  std::vector<std::string> found;
  for (const auto& term : terms_) {
    for (auto pos = haystack.find(term); pos != std::string::npos; pos = haystack.find(term, pos + 1)) {
      const bool left = pos == 0 || !is_word_char(haystack[pos - 1]);
      const auto end = pos + term.size();
      const bool right = end == haystack.size() || !is_word_char(haystack[end]);
      if (left && right) {
        found.push_back(term);
        break;
      }
    }
  }
  return found;
}

ValidationReport validate(const CategoryDescriptor& descriptor, const ColorBlocklist& blocklist) {
  ValidationReport report{descriptor.category, {}};
  if (normalize_text(descriptor.category).empty()) {
    report.violations.push_back({std::string(rule::kEmptyCategory), "", "category name is empty"});
  }
  if (descriptor.attributes.empty()) {
    report.violations.push_back({std::string(rule::kNoAttributes), "", "at least one attribute is required"});
  }
  std::map<std::string, std::size_t> seen;
  for (std::size_t i = 0; i < descriptor.attributes.size(); ++i) {
    const auto& attribute = descriptor.attributes[i];
    const auto key = normalize_text(attribute);
    if (key.empty()) {
      report.violations.push_back({std::string(rule::kEmptyAttribute), attribute, fmt::format("attribute {}", i)});
      continue;
    }
    for (const auto& term : blocklist.hits(attribute)) {
      report.violations.push_back({std::string(rule::kColorTerm), attribute, term});
    }
    if (auto [it, inserted] = seen.emplace(key, i); !inserted) {
      report.violations.push_back(
          {std::string(rule::kDuplicateAttribute), attribute, fmt::format("repeats attribute {}", it->second)});
    }
  }
  return report;
}

std::vector<ValidationReport> validate_all(std::span<const CategoryDescriptor> descriptors,
                                           const ColorBlocklist& blocklist) {
  std::vector<ValidationReport> out;
  out.reserve(descriptors.size());
  for (const auto& d : descriptors) out.push_back(validate(d, blocklist));
  return out;
}

nlohmann::json report_to_json(const ValidationReport& report) {
  auto violations = nlohmann::json::array();
  for (const auto& v : report.violations) {
    violations.push_back({{"rule", v.rule}, {"text", v.text}, {"detail", v.detail}});
  }
  return {{"category", report.category}, {"passed", report.passed()}, {"violations", std::move(violations)}};
}

}  // namespace odkit::promptkit
