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

#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "linkrush/tokenizer.hpp"

namespace linkrush {
namespace {

using Tokens = std::vector<std::string>;

TEST(Tokenizer, LowercasesAndSplitsOnWhitespace) {
  EXPECT_EQ(tokenize("Nokia 2010"), (Tokens{"nokia", "2010"}));
  EXPECT_EQ(tokenize("  a\tb\n\nc  "), (Tokens{"a", "b", "c"}));
}

TEST(Tokenizer, EmptyInput) {
  EXPECT_TRUE(tokenize("").empty());
  EXPECT_TRUE(tokenize(" \n\t ").empty());
}

TEST(Tokenizer, KeepsApostropheInsideWord) {
  EXPECT_EQ(tokenize("I'm Your Baby Tonight"), (Tokens{"i'm", "your", "baby", "tonight"}));
  EXPECT_EQ(tokenize("Ankara’da"), (Tokens{"ankara'da"}));
}

TEST(Tokenizer, SplitsEdgeApostrophesAndPunctuation) {
  EXPECT_EQ(tokenize("'quoted' word"), (Tokens{"'", "quoted", "'", "word"}));
  EXPECT_EQ(tokenize("U.S. army, (1990)!"),
            (Tokens{"u", ".", "s", ".", "army", ",", "(", "1990", ")", "!"}));
  EXPECT_EQ(tokenize("rock—pop «x»"),
            (Tokens{"rock", "—", "pop", "«", "x", "»"}));
}

TEST(Tokenizer, UnicodeCaseMapping) {
  EXPECT_EQ(tokenize("FENERBAHÇE ŞİŞLİ"), (Tokens{"fenerbahçe", "şişli"}));
  EXPECT_EQ(tokenize("ÖZGÜR ĞÜ"), (Tokens{"özgür", "ğü"}));
  EXPECT_EQ(tokenize("МОСКВА Αθήνα"), (Tokens{"москва", "αθήνα"}));
}

TEST(Tokenizer, TurkishCasefoldMapsDotlessI) {
  const TokenizerOptions turkish{true};
  EXPECT_EQ(tokenize("IRMAK İzmir", turkish), (Tokens{"ırmak", "izmir"}));
  EXPECT_EQ(tokenize("IRMAK İzmir"), (Tokens{"irmak", "izmir"}));
}

TEST(Tokenizer, InvalidUtf8BecomesReplacementCharacter) {
  const auto tokens = tokenize(std::string("ab\xff" "cd"));
  ASSERT_EQ(tokens.size(), 1u);
  EXPECT_EQ(tokens[0], "ab�" "cd");
}

TEST(Tokenizer, NormalizeAndCount) {
  EXPECT_EQ(normalize("  The   Earth "), "the earth");
  EXPECT_EQ(count_tokens(normalize("Galatasaray S.K.")), 5u);
  EXPECT_EQ(count_tokens(""), 0u);
}

// tokenize(join(tokenize(t))) == tokenize(t) over random mixed strings.
TEST(TokenizerProperty, Idempotent) {
  const std::vector<std::string> pieces = {"a", "B", "'", "’", " ", ".", "-", "İ", "ı",
                                           "Ç", "7", "\t", "(", "x'y", " ", "Ω", "\xff"};
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::size_t> pick(0, pieces.size() - 1);
  std::uniform_int_distribution<int> len(0, 20);
  for (int trial = 0; trial < 2000; ++trial) {
    std::string text;
    for (int i = len(rng); i > 0; --i) text += pieces[pick(rng)];
    for (bool turkish : {false, true}) {
      const TokenizerOptions o{turkish};
      const auto once = tokenize(text, o);
      EXPECT_EQ(tokenize(join(once), o), once) << "input: " << text;
      for (const auto& t : once) EXPECT_FALSE(t.empty());
    }
  }
}

}  // namespace
}  // namespace linkrush
