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

#include <fstream>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "linkrush/linkrush.hpp"

#ifndef LINKRUSH_DATA_DIR
#define LINKRUSH_DATA_DIR "data"
#endif

namespace linkrush::testing {

inline std::string data_path(const std::string& name) {
  return std::string(LINKRUSH_DATA_DIR) + "/" + name;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline Corpus synthetic_corpus() {
  std::ifstream in(data_path("synthetic/corpus.jsonl"));
  return ingest(in);
}

inline SearchIndex synthetic_index() { return build_index(synthetic_corpus()); }

inline std::vector<TaggedSentence> synthetic_sentences() {
  return read_conll(data_path("synthetic/sentences.conll")).sentences;
}

// Builds a corpus from (title, text) pairs; text may carry [[...]] links.
inline Corpus corpus_of(const std::vector<std::pair<std::string, std::string>>& pages) {
  std::vector<Article> articles;
  for (const auto& [title, text] : pages) {
    Article a;
    a.title = title;
    a.body = strip_link_markup(text);
    a.links = extract_links(text);
    articles.push_back(std::move(a));
  }
  return {{}, build_documents(articles, build_referred_by(articles))};
}

inline std::vector<std::string> words(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

inline TaggedSentence sentence_with(const std::string& id, std::size_t length,
                                    const std::vector<std::tuple<std::size_t, std::size_t,
                                                                 EntityType>>& spans) {
  TaggedSentence s;
  s.id = id;
  for (std::size_t i = 0; i < length; ++i) s.tokens.push_back("t" + std::to_string(i));
  s.tags.assign(length, BioTag::outside());
  for (const auto& [start, end, type] : spans) {
    s.tags[start] = BioTag::begin(type);
    for (auto i = start + 1; i < end; ++i) s.tags[i] = BioTag::inside(type);
  }
  return s;
}

// Six gold/predicted sentence pairs with hand-counted scores:
// PER tp2 fp1 fn1, LOC fp2 fn1, GRP fn1, CORP fp1, CW tp1, no PROD.
struct ConfusionFixture {
  std::vector<TaggedSentence> gold, pred;
};

inline ConfusionFixture confusion_fixture() {
  using T = EntityType;
  ConfusionFixture f;
  f.gold = {sentence_with("s1", 4, {{0, 2, T::kPerson}}),
            sentence_with("s2", 5, {{1, 2, T::kPerson}, {3, 4, T::kLocation}}),
            sentence_with("s3", 3, {{0, 1, T::kPerson}}),
            sentence_with("s4", 4, {}),
            sentence_with("s5", 3, {{0, 2, T::kGroup}}),
            sentence_with("s6", 5, {{0, 3, T::kCreativeWork}})};
  f.pred = {sentence_with("s1", 4, {{0, 2, T::kPerson}}),
            sentence_with("s2", 5, {{1, 2, T::kPerson}, {2, 4, T::kLocation}}),
            sentence_with("s3", 3, {}),
            sentence_with("s4", 4, {{2, 3, T::kPerson}}),
            sentence_with("s5", 3, {{0, 2, T::kLocation}}),
            sentence_with("s6", 5, {{0, 3, T::kCreativeWork}, {3, 4, T::kCorporation}})};
  return f;
}

}  // namespace linkrush::testing
