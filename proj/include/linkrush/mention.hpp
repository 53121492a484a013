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

#include <algorithm>
#include <cstddef>
#include <set>
#include <span>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "linkrush/corpus.hpp"
#include "linkrush/index.hpp"
#include "linkrush/retrieval.hpp"
#include "linkrush/tokenizer.hpp"

namespace linkrush {

// Half-open token range [start, end).
struct Span {
  std::size_t start = 0;
  std::size_t end = 0;

  std::size_t length() const { return end - start; }
  bool overlaps(const Span& o) const { return start < o.end && o.start < end; }
  auto operator<=>(const Span&) const = default;
};

struct Mention {
  std::size_t start = 0;
  std::size_t end = 0;
  std::vector<std::string> surface;  // normalized sentence tokens in [start, end)
  DocId doc = 0;
  double pooled_score = 0.0;

  Span span() const { return {start, end}; }
  std::size_t length() const { return end - start; }
  bool operator==(const Mention&) const = default;
};

// Each sentence token normalized on its own. A token the tokenizer would split
// ("u.s.") becomes one unit "u . s .", so phrase keys over units line up with
// normalized anchors.
inline std::vector<std::string> normalize_tokens(std::span<const std::string> tokens,
                                                 const TokenizerOptions& options = {}) {
  std::vector<std::string> units;
  units.reserve(tokens.size());
  for (const auto& t : tokens) units.push_back(normalize(t, options));
  return units;
}

// Every (span, pooled document) pair where one of the document's referred_by
// phrases equals the normalized tokens of the span. `units` must come from
// normalize_tokens.
inline std::vector<Mention> find_matches(std::span<const std::string> units,
                                         const CandidatePool& pool,
                                         const std::vector<IndexedDocument>& documents) {
  struct Target {
    DocId doc;
    double score;
  };
  std::unordered_map<std::string, std::vector<Target>> phrases;
  std::size_t longest = 0;
  for (const auto& c : pool.candidates) {
    for (const auto& phrase : documents.at(c.doc).referred_by) {
      if (phrase.empty()) continue;
      phrases[phrase].push_back({c.doc, c.pooled_score});
      longest = std::max(longest, count_tokens(phrase));
    }
  }
  std::vector<Mention> matches;
  if (phrases.empty()) return matches;

  for (std::size_t start = 0; start < units.size(); ++start) {
    std::string key;
    std::size_t key_tokens = 0;
    for (std::size_t end = start + 1; end <= units.size(); ++end) {
      const auto& unit = units[end - 1];
      key_tokens += count_tokens(unit);
      if (key_tokens > longest) break;
      if (end > start + 1) key.push_back(' ');
      key.append(unit);
      const auto it = phrases.find(key);
      if (it == phrases.end()) continue;
      for (const auto& target : it->second) {
        Mention m;
        m.start = start;
        m.end = end;
        m.surface.assign(units.begin() + start, units.begin() + end);
        m.doc = target.doc;
        m.pooled_score = target.score;
        matches.push_back(std::move(m));
      }
    }
  }
  return matches;
}

// Priority for overlap resolution: longer first, then higher pooled score,
// then earlier start, then lower doc id.
inline bool mention_precedes(const Mention& a, const Mention& b) {
  if (a.length() != b.length()) return a.length() > b.length();
  if (a.pooled_score != b.pooled_score) return a.pooled_score > b.pooled_score;
  if (a.start != b.start) return a.start < b.start;
  return a.doc < b.doc;
}

// Greedy longest-match selection; output is non-overlapping, sorted by start.
inline std::vector<Mention> resolve_overlaps(std::vector<Mention> matches) {
  std::sort(matches.begin(), matches.end(), mention_precedes);
  std::vector<Mention> kept;
  for (auto& m : matches) {
    const bool clash = std::any_of(kept.begin(), kept.end(), [&](const Mention& k) {
      return k.span().overlaps(m.span());
    });
    if (!clash) kept.push_back(std::move(m));
  }
  std::sort(kept.begin(), kept.end(),
            [](const Mention& a, const Mention& b) { return a.start < b.start; });
  return kept;
}

inline std::vector<Mention> link_sentence(std::span<const std::string> sentence_tokens,
                                          const SearchIndex& index,
                                          std::size_t k = kDefaultTopK,
                                          std::span<const Field> fields = kFields) {
  const auto units = normalize_tokens(sentence_tokens, index.tokenizer);
  const auto pool = retrieve_pooled(sentence_tokens, index, k, fields);
  return resolve_overlaps(find_matches(units, pool, index.documents));
}

// Fraction of gold spans matched exactly by a detected span, ignoring types.
// No gold spans means nothing was missed.
inline double mention_recall(std::span<const Span> gold, std::span<const Mention> detected) {
  if (gold.empty()) return 1.0;
  std::set<Span> found;
  for (const auto& m : detected) found.insert(m.span());
  std::size_t hit = 0;
  for (const auto& g : gold) hit += found.count(g);
  return static_cast<double>(hit) / static_cast<double>(gold.size());
}

// Corpus-level recall: matched gold spans over all gold spans.
struct RecallCounter {
  std::size_t gold = 0;
  std::size_t matched = 0;

  void add(std::span<const Span> gold_spans, std::span<const Mention> detected) {
    std::set<Span> found;
    for (const auto& m : detected) found.insert(m.span());
    gold += gold_spans.size();
    for (const auto& g : gold_spans) matched += found.count(g);
  }

  double recall() const {
    return gold == 0 ? 1.0 : static_cast<double>(matched) / static_cast<double>(gold);
  }
};

}  // namespace linkrush
