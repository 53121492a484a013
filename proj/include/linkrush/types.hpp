// Copyright 2026 The linkrush Authors.
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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace linkrush {

enum class EntityType : std::uint8_t {
  kPerson,
  kLocation,
  kGroup,
  kCorporation,
  kProduct,
  kCreativeWork,
};

inline constexpr std::size_t kEntityTypeCount = 6;

inline constexpr std::array<EntityType, kEntityTypeCount> kEntityTypes = {
    EntityType::kPerson,      EntityType::kLocation, EntityType::kGroup,
    EntityType::kCorporation, EntityType::kProduct,  EntityType::kCreativeWork};

inline constexpr std::string_view type_code(EntityType t) {
  constexpr std::array<std::string_view, kEntityTypeCount> kCodes = {
      "PER", "LOC", "GRP", "CORP", "PROD", "CW"};
  return kCodes[static_cast<std::size_t>(t)];
}

inline std::optional<EntityType> parse_type(std::string_view code) {
  for (auto t : kEntityTypes) {
    if (type_code(t) == code) return t;
  }
  return std::nullopt;
}

inline constexpr std::size_t type_index(EntityType t) { return static_cast<std::size_t>(t); }

// Output of the binary head. Index 0 is O, index 1 is NE.
enum class Gate : std::uint8_t { kOther = 0, kEntity = 1 };

// One BIO label.
struct BioTag {
  enum class Prefix : std::uint8_t { kOutside, kBegin, kInside };

  Prefix prefix = Prefix::kOutside;
  EntityType type = EntityType::kPerson;  // meaningless when outside

  static BioTag outside() { return {}; }
  static BioTag begin(EntityType t) { return {Prefix::kBegin, t}; }
  static BioTag inside(EntityType t) { return {Prefix::kInside, t}; }

  bool is_outside() const { return prefix == Prefix::kOutside; }

  std::optional<EntityType> entity() const {
    if (is_outside()) return std::nullopt;
    return type;
  }

  std::string str() const {
    switch (prefix) {
      case Prefix::kOutside: return "O";
      case Prefix::kBegin: return "B-" + std::string(type_code(type));
      case Prefix::kInside: return "I-" + std::string(type_code(type));
    }
    return "O";
  }

  static std::optional<BioTag> parse(std::string_view s) {
    if (s == "O") return outside();
    if (s.size() < 3 || s[1] != '-') return std::nullopt;
    const auto t = parse_type(s.substr(2));
    if (!t) return std::nullopt;
    if (s[0] == 'B') return begin(*t);
    if (s[0] == 'I') return inside(*t);
    return std::nullopt;
  }

  bool operator==(const BioTag& o) const {
    return prefix == o.prefix && (is_outside() || type == o.type);
  }
};

// Tokens with aligned BIO labels. `columns` holds the opaque middle CoNLL
// columns per token ("_ _" when absent); `comments` the raw comment lines.
struct TaggedSentence {
  std::string id;
  std::vector<std::string> tokens;
  std::vector<BioTag> tags;
  std::vector<std::string> columns;
  std::vector<std::string> comments;
};

// Rewrites every I-X that does not continue a B-X/I-X run into B-X. Returns
// the number of repairs.
inline std::size_t repair_bio(std::vector<BioTag>& tags) {
  std::size_t repaired = 0;
  for (std::size_t i = 0; i < tags.size(); ++i) {
    if (tags[i].prefix != BioTag::Prefix::kInside) continue;
    const bool continues = i > 0 && !tags[i - 1].is_outside() && tags[i - 1].type == tags[i].type;
    if (!continues) {
      tags[i].prefix = BioTag::Prefix::kBegin;
      ++repaired;
    }
  }
  return repaired;
}

inline bool is_well_formed(const std::vector<BioTag>& tags) {
  auto copy = tags;
  return repair_bio(copy) == 0;
}

}  // namespace linkrush
