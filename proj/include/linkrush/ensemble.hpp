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
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "linkrush/classifier.hpp"
#include "linkrush/index.hpp"
#include "linkrush/mention.hpp"
#include "linkrush/representation.hpp"
#include "linkrush/retrieval.hpp"
#include "linkrush/token_tagger.hpp"
#include "linkrush/types.hpp"

namespace linkrush {

inline constexpr std::size_t kDefaultRouteThreshold = 11;
// Threshold that sends every sentence to entity linking.
inline constexpr std::size_t kRouteAllToLinking = std::numeric_limits<std::size_t>::max();

struct RouterConfig {
  std::size_t threshold = kDefaultRouteThreshold;
};

enum class Route { kBaseline, kEntityLinking };

// Sentences longer than the threshold have enough context for the baseline.
inline Route route(std::size_t token_count, const RouterConfig& config = {}) {
  return token_count > config.threshold ? Route::kBaseline : Route::kEntityLinking;
}

struct LinkingOptions {
  std::size_t k = kDefaultTopK;
  std::size_t max_len = kDefaultMaxLength;
};

// Mentions with the entity type the classifier gave them; O-gated mentions
// are dropped.
struct TypedMention {
  Mention mention;
  EntityType type;
};

inline std::vector<TypedMention> classify_mentions(std::span<const std::string> tokens,
                                                   const SearchIndex& index,
                                                   const LinearTwoHeadModel& model,
                                                   const LinkingOptions& options = {}) {
  const auto units = normalize_tokens(tokens, index.tokenizer);
  std::vector<TypedMention> typed;
  for (const auto& m : link_sentence(tokens, index, options.k)) {
    const auto rep = build_representation(units, m, index.documents.at(m.doc).lead,
                                          options.max_len, index.tokenizer);
    if (const auto type = predict(model, rep)) typed.push_back({m, *type});
  }
  return typed;
}

inline std::vector<BioTag> encode_spans(std::size_t length,
                                        std::span<const TypedMention> mentions) {
  std::vector<BioTag> tags(length, BioTag::outside());
  for (const auto& tm : mentions) {
    tags[tm.mention.start] = BioTag::begin(tm.type);
    for (auto i = tm.mention.start + 1; i < tm.mention.end; ++i) tags[i] = BioTag::inside(tm.type);
  }
  return tags;
}

inline std::vector<BioTag> tag_el(std::span<const std::string> tokens, const SearchIndex& index,
                                  const LinearTwoHeadModel& model,
                                  const LinkingOptions& options = {}) {
  return encode_spans(tokens.size(), classify_mentions(tokens, index, model, options));
}

inline std::vector<BioTag> tag_baseline(std::span<const std::string> tokens,
                                        const TokenTagger& tagger,
                                        const TokenizerOptions& tokenizer = {}) {
  return tag_tokens(tagger, normalize_tokens(tokens, tokenizer));
}

// Length-routed combination of the baseline tagger and the entity-linking
// tagger.
class Ensemble {
 public:
  Ensemble(const SearchIndex& index, const LinearTwoHeadModel& model, const TokenTagger& baseline,
           RouterConfig router = {}, LinkingOptions linking = {})
      : index_(index), model_(model), baseline_(baseline), router_(router), linking_(linking) {}

  Route route_of(const TaggedSentence& s) const { return route(s.tokens.size(), router_); }

  TaggedSentence tag(const TaggedSentence& input) const {
    TaggedSentence out = input;
    out.tags = route_of(input) == Route::kBaseline
                   ? tag_baseline(input.tokens, baseline_, index_.tokenizer)
                   : tag_el(input.tokens, index_, model_, linking_);
    return out;
  }

 private:
  const SearchIndex& index_;
  const LinearTwoHeadModel& model_;
  const TokenTagger& baseline_;
  RouterConfig router_;
  LinkingOptions linking_;
};

}  // namespace linkrush
