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

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "linkrush/index.hpp"
#include "oracles.hpp"

namespace linkrush {
namespace {

using testing::words;

std::vector<IndexedDocument> docs_with_text(const std::vector<std::string>& texts) {
  std::vector<IndexedDocument> docs;
  for (std::size_t i = 0; i < texts.size(); ++i) {
    IndexedDocument d;
    d.doc_id = static_cast<DocId>(i);
    d.title = "doc" + std::to_string(i);
    d.referred_by = {d.title};
    d.all_text = texts[i];
    docs.push_back(d);
  }
  return docs;
}

TEST(FieldIndex, PostingsSortedByDoc) {
  const auto docs = docs_with_text({"earth sun earth", "moon", "the earth"});
  const auto index = FieldIndex::build(Field::kAllText, docs);
  const auto list = index.postings("earth");
  ASSERT_EQ(list.size(), 2u);
  EXPECT_EQ(list[0], (Posting{0, 2}));
  EXPECT_EQ(list[1], (Posting{2, 1}));
  EXPECT_EQ(index.doc_count(), 3u);
  EXPECT_DOUBLE_EQ(index.avg_doc_length(), 2.0);
}

TEST(FieldIndex, EmptyFieldHasZeroLength) {
  const auto docs = docs_with_text({"a b", "c"});
  const auto index = FieldIndex::build(Field::kInterwikies, docs);
  EXPECT_EQ(index.doc_length(0), 0u);
  EXPECT_EQ(index.doc_count(), 2u);
  EXPECT_TRUE(index.search("a", 5).empty());
}

TEST(FieldIndex, EveryFieldCoversEveryDocument) {
  const auto index = testing::synthetic_index();
  for (Field f : kFields) EXPECT_EQ(index.field(f).doc_count(), 30u) << field_name(f);
}

TEST(FieldIndex, EmptyDocumentListIsAnError) {
  EXPECT_THROW(build_field_indexes({}), UsageError);
}

TEST(Bm25, NoMatchingTermScoresZero) {
  const auto index = FieldIndex::build(Field::kAllText, docs_with_text({"sun", "moon"}));
  const std::vector<std::string> q = {"venus"};
  EXPECT_EQ(index.bm25_score(q, 0), 0.0);
}

TEST(Bm25, SingleDocumentAnalyticValue) {
  // N = df = tf = 1, len = avg: idf = ln(4/3) and the tf factor is 2.2/2.2.
  const auto index = FieldIndex::build(Field::kAllText, docs_with_text({"sun"}));
  const std::vector<std::string> q = {"sun"};
  EXPECT_NEAR(index.bm25_score(q, 0), 0.28768207245178085, 1e-12);
  EXPECT_NEAR(index.bm25_score(q, 0), std::log(4.0 / 3.0), 1e-12);
}

TEST(Bm25, RepeatedQueryTermsCountOnce) {
  const auto index = FieldIndex::build(Field::kAllText, docs_with_text({"sun sun moon", "moon"}));
  const std::vector<std::string> once = {"sun"};
  const std::vector<std::string> twice = {"sun", "sun"};
  EXPECT_EQ(index.bm25_score(once, 0), index.bm25_score(twice, 0));
}

TEST(Bm25, UnknownDocIsAnError) {
  const auto index = FieldIndex::build(Field::kAllText, docs_with_text({"sun"}));
  const std::vector<std::string> q = {"sun"};
  EXPECT_THROW(index.bm25_score(q, 1), UsageError);
}

TEST(Search, NoCorpusTermGivesEmptyResult) {
  const auto index = testing::synthetic_index();
  EXPECT_TRUE(index.field(Field::kAllText).search("zzzz qqqq", 200).empty());
  EXPECT_TRUE(index.field(Field::kAllText).search("", 200).empty());
}

TEST(Search, UnderfilledResultList) {
  // Seven of 30 documents mention the term; k = 200 returns exactly those.
  std::vector<std::string> texts;
  for (int i = 0; i < 30; ++i) texts.push_back(i % 4 == 1 && i < 28 ? "alpha beta" : "gamma");
  const auto index = FieldIndex::build(Field::kAllText, docs_with_text(texts));
  const auto hits = index.search("alpha", 200);
  EXPECT_EQ(hits.size(), 7u);
  for (const auto& h : hits) EXPECT_EQ(h.doc % 4, 1u);
}

TEST(Search, TiesBreakByDocId) {
  const auto index = FieldIndex::build(Field::kAllText, docs_with_text({"x y", "x y", "x y"}));
  const auto hits = index.search("x", 2);
  ASSERT_EQ(hits.size(), 2u);
  EXPECT_EQ(hits[0].doc, 0u);
  EXPECT_EQ(hits[1].doc, 1u);
  EXPECT_THROW(index.search("x", 0), UsageError);
}

TEST(SearchProperty, MatchesExhaustiveOracle) {
  std::mt19937_64 rng(101);
  for (int corpus = 0; corpus < 15; ++corpus) {
    std::uniform_int_distribution<std::size_t> size(1, 50);
    const auto docs = oracle::random_documents(rng, size(rng));
    const auto fields = build_field_indexes(docs);
    for (Field f : kFields) {
      const auto brute = oracle::BruteForceScorer::from(docs, f);
      const auto& index = fields[static_cast<std::size_t>(f)];
      for (int q = 0; q < 20; ++q) {
        const auto query = oracle::random_query(rng);
        const auto expected = brute.rank(query);
        std::uniform_int_distribution<std::size_t> k(1, 60);
        const auto kk = k(rng);
        const auto got = index.search(std::span<const std::string>(query), kk);
        ASSERT_EQ(got.size(), std::min(kk, expected.size()));
        for (std::size_t i = 0; i < got.size(); ++i) {
          EXPECT_EQ(got[i].doc, expected[i].doc);
          EXPECT_NEAR(got[i].score, expected[i].score, 1e-9);
          EXPECT_EQ(got[i].score, index.bm25_score(query, got[i].doc));
        }
      }
    }
  }
}

TEST(IndexProperty, IdfPositiveAndScoresMonotoneInQueryTerms) {
  std::mt19937_64 rng(5);
  const auto docs = oracle::random_documents(rng, 40);
  const auto index = FieldIndex::build(Field::kAllText, docs);
  for (std::size_t df = 1; df <= index.doc_count(); ++df) EXPECT_GT(index.idf(df), 0.0);
  for (int trial = 0; trial < 200; ++trial) {
    auto query = oracle::random_query(rng);
    std::uniform_int_distribution<DocId> doc(0, 39);
    const auto d = doc(rng);
    const double before = index.bm25_score(query, d);
    EXPECT_GE(before, 0.0);
    query.push_back(oracle::random_query(rng).front());
    EXPECT_GE(index.bm25_score(query, d) + 1e-12, before);
  }
}

TEST(IndexProperty, PermutingDocumentsKeepsContentScores) {
  std::mt19937_64 rng(77);
  auto docs = oracle::random_documents(rng, 35);
  std::vector<std::size_t> perm(docs.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<IndexedDocument> permuted;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    permuted.push_back(docs[perm[i]]);
    permuted.back().doc_id = static_cast<DocId>(i);
  }
  const auto a = FieldIndex::build(Field::kAllText, docs);
  const auto b = FieldIndex::build(Field::kAllText, permuted);
  for (int q = 0; q < 50; ++q) {
    const auto query = oracle::random_query(rng);
    for (std::size_t i = 0; i < perm.size(); ++i) {
      EXPECT_NEAR(b.bm25_score(query, static_cast<DocId>(i)),
                  a.bm25_score(query, static_cast<DocId>(perm[i])), 1e-12);
    }
  }
}

TEST(IndexContainer, SaveLoadRoundTrip) {
  const auto index = testing::synthetic_index();
  const auto path = (std::filesystem::temp_directory_path() / "lr_index_test.bin").string();
  save_index(index, path);
  const auto loaded = load_index(path);
  EXPECT_EQ(loaded.documents, index.documents);
  EXPECT_EQ(serialize_index(loaded), serialize_index(index));
  for (const auto& s : testing::synthetic_sentences()) {
    const auto q = join(s.tokens);
    for (Field f : kFields) {
      EXPECT_EQ(loaded.field(f).search(q, 200), index.field(f).search(q, 200));
    }
  }
}

TEST(IndexContainer, CorruptInputIsRejected) {
  auto bytes = serialize_index(testing::synthetic_index());
  binary::Reader truncated(bytes.substr(0, bytes.size() / 2));
  EXPECT_THROW(deserialize_index(truncated), DataError);
  bytes[0] = 'X';
  binary::Reader bad_magic(bytes);
  EXPECT_THROW(deserialize_index(bad_magic), DataError);
}

}  // namespace
}  // namespace linkrush
