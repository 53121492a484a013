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
#include <cstddef>
#include <set>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "linkrush/error.hpp"
#include "linkrush/mention.hpp"
#include "linkrush/types.hpp"

namespace linkrush {

struct TypedSpan {
  std::size_t start = 0;
  std::size_t end = 0;
  EntityType type = EntityType::kPerson;

  auto operator<=>(const TypedSpan&) const = default;
};

// Maximal B/I runs as typed spans. Dangling I-X is repaired to B-X first.
inline std::set<TypedSpan> span_extract(std::vector<BioTag> tags) {
  repair_bio(tags);
  std::set<TypedSpan> spans;
  for (std::size_t i = 0; i < tags.size();) {
    if (tags[i].prefix != BioTag::Prefix::kBegin) {
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    while (j < tags.size() && tags[j].prefix == BioTag::Prefix::kInside &&
           tags[j].type == tags[i].type) {
      ++j;
    }
    spans.insert({i, j, tags[i].type});
    i = j;
  }
  return spans;
}

inline std::vector<Span> untyped_spans(const std::vector<BioTag>& tags) {
  std::vector<Span> out;
  for (const auto& s : span_extract(tags)) out.push_back({s.start, s.end});
  return out;
}

struct ClassScores {
  std::size_t tp = 0, fp = 0, fn = 0;
  double precision = 0.0, recall = 0.0, f1 = 0.0;
};

struct EvalReport {
  std::array<ClassScores, kEntityTypeCount> per_class{};
  std::array<std::size_t, kEntityTypeCount> support{};  // gold spans per class
  // Classes with gold or predicted spans; the macro average runs over these.
  std::vector<EntityType> scored_classes;
  double macro_precision = 0.0, macro_recall = 0.0, macro_f1 = 0.0;
  std::size_t sentences = 0;
  std::size_t bio_repairs = 0;

  const ClassScores& operator[](EntityType t) const { return per_class[type_index(t)]; }
};

inline double safe_ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

// Exact-span, exact-type scoring with an unweighted macro average.
inline EvalReport evaluate(std::span<const TaggedSentence> gold,
                           std::span<const TaggedSentence> pred) {
  EvalReport report;
  report.sentences = gold.size();
  for (std::size_t i = 0; i < std::max(gold.size(), pred.size()); ++i) {
    if (i >= gold.size() || i >= pred.size()) {
      const auto& extra = i < gold.size() ? gold[i] : pred[i];
      throw DataError("sentence lists are misaligned at id " + extra.id +
                      ": one side has no such sentence");
    }
    const auto& g = gold[i];
    const auto& p = pred[i];
    if (g.id != p.id || g.tokens.size() != p.tokens.size() || g.tags.size() != g.tokens.size() ||
        p.tags.size() != p.tokens.size()) {
      throw DataError("sentence lists are misaligned at id " + g.id);
    }
    auto gt = g.tags;
    auto pt = p.tags;
    report.bio_repairs += repair_bio(gt) + repair_bio(pt);
    const auto gs = span_extract(std::move(gt));
    const auto ps = span_extract(std::move(pt));
    for (const auto& s : gs) {
      auto& c = report.per_class[type_index(s.type)];
      ++report.support[type_index(s.type)];
      if (ps.count(s)) {
        ++c.tp;
      } else {
        ++c.fn;
      }
    }
    for (const auto& s : ps) {
      if (!gs.count(s)) ++report.per_class[type_index(s.type)].fp;
    }
  }
  for (auto t : kEntityTypes) {
    auto& c = report.per_class[type_index(t)];
    c.precision = safe_ratio(c.tp, c.tp + c.fp);
    c.recall = safe_ratio(c.tp, c.tp + c.fn);
    c.f1 = c.precision + c.recall > 0.0
               ? 2.0 * c.precision * c.recall / (c.precision + c.recall)
               : 0.0;
    if (c.tp + c.fp + c.fn > 0) report.scored_classes.push_back(t);
  }
  if (!report.scored_classes.empty()) {
    for (auto t : report.scored_classes) {
      report.macro_precision += report[t].precision;
      report.macro_recall += report[t].recall;
      report.macro_f1 += report[t].f1;
    }
    const auto n = static_cast<double>(report.scored_classes.size());
    report.macro_precision /= n;
    report.macro_recall /= n;
    report.macro_f1 /= n;
  }
  return report;
}

inline nlohmann::ordered_json to_json(const EvalReport& r) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json per_class = nlohmann::ordered_json::object();
  nlohmann::ordered_json support = nlohmann::ordered_json::object();
  for (auto t : kEntityTypes) {
    const auto& c = r[t];
    per_class[std::string(type_code(t))] = {{"precision", c.precision},
                                            {"recall", c.recall},
                                            {"f1", c.f1},
                                            {"tp", c.tp},
                                            {"fp", c.fp},
                                            {"fn", c.fn}};
    support[std::string(type_code(t))] = r.support[type_index(t)];
  }
  j["per_class"] = per_class;
  j["macro_precision"] = r.macro_precision;
  j["macro_recall"] = r.macro_recall;
  j["macro_f1"] = r.macro_f1;
  j["support"] = support;
  auto scored = nlohmann::ordered_json::array();
  for (auto t : r.scored_classes) scored.push_back(std::string(type_code(t)));
  j["macro_classes"] = scored;
  j["macro_policy"] = "classes with no gold and no predicted spans are excluded";
  j["sentences"] = r.sentences;
  j["bio_repairs"] = r.bio_repairs;
  return j;
}

}  // namespace linkrush
