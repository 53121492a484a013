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
#include <array>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "linkrush/index.hpp"
#include "linkrush/tokenizer.hpp"

namespace linkrush {

inline constexpr std::size_t kDefaultTopK = 200;

struct PooledCandidate {
  DocId doc = 0;
  // Set only for the fields whose top-k list contained the document.
  std::array<std::optional<double>, 4> per_field_scores;
  double pooled_score = 0.0;

  std::optional<double> score(Field f) const {
    return per_field_scores[static_cast<std::size_t>(f)];
  }
};

struct CandidatePool {
  std::string sentence_id;
  // pooled_score descending, doc ascending on ties.
  std::vector<PooledCandidate> candidates;
  std::array<std::size_t, 4> per_field_counts{};

  bool empty() const { return candidates.empty(); }
  std::size_t size() const { return candidates.size(); }
  std::size_t count(Field f) const { return per_field_counts[static_cast<std::size_t>(f)]; }
};

// The sentence as an OR query: every token's normalized terms, in order.
inline std::vector<std::string> query_terms(std::span<const std::string> sentence_tokens,
                                            const TokenizerOptions& options = {}) {
  std::vector<std::string> terms;
  for (const auto& token : sentence_tokens) {
    for (auto& t : tokenize(token, options)) terms.push_back(std::move(t));
  }
  return terms;
}

// Top-k search on each requested field, unioned by document with summed
// scores. `fields` restricts the pool (single-field recall diagnostics).
inline CandidatePool retrieve_pooled(std::span<const std::string> sentence_tokens,
                                     const SearchIndex& index, std::size_t k = kDefaultTopK,
                                     std::span<const Field> fields = kFields) {
  const auto terms = query_terms(sentence_tokens, index.tokenizer);
  CandidatePool pool;
  std::unordered_map<DocId, std::size_t> slot;
  std::vector<PooledCandidate> merged;
  for (Field f : kFields) {
    if (std::find(fields.begin(), fields.end(), f) == fields.end()) continue;
    const auto hits = index.field(f).search(std::span<const std::string>(terms), k);
    pool.per_field_counts[static_cast<std::size_t>(f)] = hits.size();
    for (const auto& hit : hits) {
      auto [it, inserted] = slot.emplace(hit.doc, merged.size());
      if (inserted) merged.push_back({hit.doc, {}, 0.0});
      merged[it->second].per_field_scores[static_cast<std::size_t>(f)] = hit.score;
    }
  }
  for (auto& c : merged) {
    for (const auto& s : c.per_field_scores) {
      if (s) c.pooled_score += *s;
    }
  }
  std::sort(merged.begin(), merged.end(),
            [](const PooledCandidate& a, const PooledCandidate& b) {
              if (a.pooled_score != b.pooled_score) return a.pooled_score > b.pooled_score;
              return a.doc < b.doc;
            });
  pool.candidates = std::move(merged);
  return pool;
}

struct PoolStats {
  std::size_t pools = 0;
  double avg_pool_size = 0.0;
  std::array<double, 4> avg_field_results{};
  std::size_t empty_pools = 0;
  std::array<std::size_t, 4> empty_field_results{};
};

inline PoolStats pool_stats(std::span<const CandidatePool> pools) {
  PoolStats stats;
  stats.pools = pools.size();
  if (pools.empty()) return stats;
  double total = 0.0;
  std::array<double, 4> field_total{};
  for (const auto& pool : pools) {
    total += static_cast<double>(pool.size());
    if (pool.empty()) ++stats.empty_pools;
    for (std::size_t f = 0; f < 4; ++f) {
      field_total[f] += static_cast<double>(pool.per_field_counts[f]);
      if (pool.per_field_counts[f] == 0) ++stats.empty_field_results[f];
    }
  }
  const auto n = static_cast<double>(pools.size());
  stats.avg_pool_size = total / n;
  for (std::size_t f = 0; f < 4; ++f) stats.avg_field_results[f] = field_total[f] / n;
  return stats;
}

}  // namespace linkrush
