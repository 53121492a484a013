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
#include <span>
#include <vector>

#include "linkrush/classifier.hpp"
#include "linkrush/ensemble.hpp"
#include "linkrush/eval.hpp"
#include "linkrush/index.hpp"
#include "linkrush/mention.hpp"
#include "linkrush/representation.hpp"
#include "linkrush/retrieval.hpp"
#include "linkrush/token_tagger.hpp"
#include "linkrush/types.hpp"

namespace linkrush {

// Classifier training pairs: every mention the linker finds in a gold
// sentence, labeled with the gold type when a gold span matches it exactly
// and O otherwise.
inline std::vector<LabeledRepresentation> mention_training_set(
    std::span<const TaggedSentence> sentences, const SearchIndex& index,
    const LinkingOptions& options = {}) {
  std::vector<LabeledRepresentation> examples;
  for (const auto& s : sentences) {
    const auto gold = span_extract(s.tags);
    const auto units = normalize_tokens(s.tokens, index.tokenizer);
    for (const auto& m : link_sentence(s.tokens, index, options.k)) {
      MentionLabel label = MentionLabel::other();
      for (const auto& g : gold) {
        if (g.start == m.start && g.end == m.end) label = MentionLabel::entity(g.type);
      }
      examples.push_back({build_representation(units, m, index.documents.at(m.doc).lead,
                                               options.max_len, index.tokenizer),
                          label});
    }
  }
  return examples;
}

inline std::vector<TokenTaggerExample> token_training_set(
    std::span<const TaggedSentence> sentences, const TokenizerOptions& tokenizer = {}) {
  std::vector<TokenTaggerExample> out;
  out.reserve(sentences.size());
  for (const auto& s : sentences) out.push_back({normalize_tokens(s.tokens, tokenizer), s.tags});
  return out;
}

// Type-agnostic mention detection recall per single field and for the full
// pool, aggregated over all gold spans.
struct MentionRecallReport {
  std::array<RecallCounter, 4> per_field;
  RecallCounter pooled;
  std::vector<CandidatePool> pools;
};

inline MentionRecallReport mention_recall_report(std::span<const TaggedSentence> sentences,
                                                 const SearchIndex& index,
                                                 std::size_t k = kDefaultTopK) {
  MentionRecallReport report;
  for (const auto& s : sentences) {
    const auto gold = untyped_spans(s.tags);
    const auto units = normalize_tokens(s.tokens, index.tokenizer);
    for (Field f : kFields) {
      const std::array<Field, 1> only{f};
      const auto pool = retrieve_pooled(s.tokens, index, k, only);
      const auto detected = resolve_overlaps(find_matches(units, pool, index.documents));
      report.per_field[static_cast<std::size_t>(f)].add(gold, detected);
    }
    auto pool = retrieve_pooled(s.tokens, index, k);
    pool.sentence_id = s.id;
    const auto detected = resolve_overlaps(find_matches(units, pool, index.documents));
    report.pooled.add(gold, detected);
    report.pools.push_back(std::move(pool));
  }
  return report;
}

inline std::vector<TaggedSentence> tag_all(std::span<const TaggedSentence> sentences,
                                           const Ensemble& ensemble) {
  std::vector<TaggedSentence> out;
  out.reserve(sentences.size());
  for (const auto& s : sentences) out.push_back(ensemble.tag(s));
  return out;
}

}  // namespace linkrush
