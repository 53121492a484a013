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

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "linkrush/error.hpp"
#include "linkrush/mention.hpp"
#include "linkrush/tokenizer.hpp"

namespace linkrush {

inline constexpr std::size_t kDefaultMaxLength = 256;
inline constexpr std::string_view kClsMarker = "[CLS]";
inline constexpr std::string_view kSepMarker = "[SEP]";
inline constexpr std::size_t kMarkerCount = 5;

enum class Segment : std::uint8_t { kCls, kLeftContext, kMention, kRightContext, kWiki, kSep };

inline constexpr std::string_view segment_name(Segment s) {
  switch (s) {
    case Segment::kCls: return "CLS";
    case Segment::kLeftContext: return "CTX_L";
    case Segment::kMention: return "MENTION";
    case Segment::kRightContext: return "CTX_R";
    case Segment::kWiki: return "WIKI";
    case Segment::kSep: return "SEP";
  }
  return "?";
}

// [CLS] ctx_l [SEP] mention [SEP] ctx_r [SEP] lead [SEP], one segment label
// per position.
struct Representation {
  std::vector<std::string> tokens;
  std::vector<Segment> segments;
  Mention mention;

  std::size_t size() const { return tokens.size(); }

  std::vector<std::string> segment_tokens(Segment s) const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      if (segments[i] == s) out.push_back(tokens[i]);
    }
    return out;
  }

  // Debug rendering with literal markers.
  std::string render() const { return join(tokens); }
};

// Lays out the classifier input for `mention`. When over `max_len`, the lead
// is cut from its end first, then the right context from its end, then the
// left context from its start. The mention is never cut.
inline Representation build_representation(std::span<const std::string> sentence_tokens,
                                           const Mention& mention, std::string_view lead,
                                           std::size_t max_len = kDefaultMaxLength,
                                           const TokenizerOptions& options = {}) {
  if (mention.start >= mention.end || mention.end > sentence_tokens.size()) {
    throw UsageError("build_representation: mention outside the sentence");
  }
  if (max_len < mention.length() + kMarkerCount) {
    throw UsageError("build_representation: max_len " + std::to_string(max_len) +
                     " cannot hold a " + std::to_string(mention.length()) +
                     "-token mention and five markers");
  }
  auto left = sentence_tokens.subspan(0, mention.start);
  const auto body = sentence_tokens.subspan(mention.start, mention.length());
  auto right = sentence_tokens.subspan(mention.end);
  auto wiki = tokenize(lead, options);

  std::size_t budget = max_len - kMarkerCount - body.size();
  const auto take = [&budget](std::size_t wanted) {
    const auto n = std::min(wanted, budget);
    budget -= n;
    return n;
  };
  // Budget goes to the protected-most segments first.
  const auto keep_left = take(left.size());
  const auto keep_right = take(right.size());
  const auto keep_wiki = take(wiki.size());
  left = left.subspan(left.size() - keep_left);
  right = right.subspan(0, keep_right);
  wiki.resize(keep_wiki);

  Representation rep;
  rep.mention = mention;
  rep.tokens.reserve(max_len);
  const auto emit = [&rep](std::string_view token, Segment s) {
    rep.tokens.emplace_back(token);
    rep.segments.push_back(s);
  };
  emit(kClsMarker, Segment::kCls);
  for (const auto& t : left) emit(t, Segment::kLeftContext);
  emit(kSepMarker, Segment::kSep);
  for (const auto& t : body) emit(t, Segment::kMention);
  emit(kSepMarker, Segment::kSep);
  for (const auto& t : right) emit(t, Segment::kRightContext);
  emit(kSepMarker, Segment::kSep);
  for (const auto& t : wiki) emit(t, Segment::kWiki);
  emit(kSepMarker, Segment::kSep);
  return rep;
}

}  // namespace linkrush
