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
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "fixtures.hpp"

namespace linkrush {
namespace {

using testing::words;

std::vector<BioTag> tags(std::initializer_list<const char*> codes) {
  std::vector<BioTag> out;
  for (const char* c : codes) out.push_back(*BioTag::parse(c));
  return out;
}

TokenTagger biased_tagger(std::size_t favoured_class) {
  TokenTagger t;
  t.feature_dim = 1u << 8;
  t.layer = linear::SoftmaxLayer::zeros(kEntityTypeCount + 1, t.feature_dim);
  t.layer.bias[favoured_class] = 5.0;
  return t;
}

TEST(RepairBio, DanglingInsideBecomesBegin) {
  auto t = tags({"I-PER", "I-PER", "O", "I-LOC", "I-PER", "B-CW", "I-CW"});
  EXPECT_EQ(repair_bio(t), 3u);
  EXPECT_EQ(t, tags({"B-PER", "I-PER", "O", "B-LOC", "B-PER", "B-CW", "I-CW"}));
  EXPECT_TRUE(is_well_formed(t));
}

TEST(TokenTagger, OtherBiasGivesAllOutside) {
  const auto t = biased_tagger(kSingleHeadOtherClass);
  const auto out = tag_tokens(t, words("whitney houston sang in istanbul"));
  EXPECT_EQ(out, std::vector<BioTag>(5, BioTag::outside()));
}

TEST(TokenTagger, InsidePredictionsAreRepaired) {
  const auto t = biased_tagger(type_index(EntityType::kPerson));
  const auto units = words("a b");
  EXPECT_EQ(raw_token_predictions(t, units), tags({"I-PER", "I-PER"}));
  EXPECT_EQ(tag_tokens(t, units), tags({"B-PER", "I-PER"}));
}

TEST(TokenTagger, WindowFeaturesSeeNeighbours) {
  const auto units = words("a b c d");
  EXPECT_NE(token_window_features(units, 1, 3, 1u << 10),
            token_window_features(words("x b c d"), 1, 3, 1u << 10));
  // Window 0 leaves only the token, its bigrams and the bias.
  EXPECT_EQ(token_window_features(units, 1, 0, 1u << 10),
            token_window_features(words("a b c z"), 1, 0, 1u << 10));
  EXPECT_EQ(token_window_features(units, 1, 1, 1u << 10),
            token_window_features(words("a b c z"), 1, 1, 1u << 10));
  EXPECT_NE(token_window_features(units, 1, 2, 1u << 10),
            token_window_features(words("a b c z"), 1, 2, 1u << 10));
}

TEST(TokenTagger, LearnsSeparableFixture) {
  std::vector<TokenTaggerExample> set = {
      {words("mr alpha spoke"), tags({"O", "B-PER", "O"})},
      {words("visit beta city"), tags({"O", "B-LOC", "I-LOC"})},
      {words("the gamma band"), tags({"O", "B-GRP", "O"})},
      {words("buy delta shares"), tags({"O", "B-CORP", "O"})},
      {words("new epsilon phone"), tags({"O", "B-PROD", "O"})},
      {words("read zeta novel"), tags({"O", "B-CW", "O"})},
  };
  TokenTaggerConfig config;
  config.feature_dim = 1u << 12;
  config.sgd.epochs = 200;
  std::vector<double> losses;
  const auto tagger = train_token_tagger(set, config, &losses);
  EXPECT_LT(losses.back(), losses.front());
  for (const auto& ex : set) EXPECT_EQ(tag_tokens(tagger, ex.units), ex.tags);
}

TEST(TokenTagger, SaveLoadAndKindCheck) {
  const auto t = biased_tagger(2);
  const auto path = (std::filesystem::temp_directory_path() / "linkrush_tagger.bin").string();
  save_token_tagger(t, path);
  EXPECT_EQ(load_token_tagger(path), t);
  EXPECT_THROW(load_model(path), DataError);
  save_model(LinearTwoHeadModel::zeros({1u << 4, false, {}}), path);
  EXPECT_THROW(load_token_tagger(path), DataError);
  std::filesystem::remove(path);
}

TEST(Router, ThresholdBoundary) {
  EXPECT_EQ(route(12), Route::kBaseline);
  EXPECT_EQ(route(11), Route::kEntityLinking);
  EXPECT_EQ(route(5), Route::kEntityLinking);
  EXPECT_EQ(route(1, {0}), Route::kBaseline);
  EXPECT_EQ(route(0, {0}), Route::kEntityLinking);
  EXPECT_EQ(route(1000000, {kRouteAllToLinking}), Route::kEntityLinking);
}

TEST(EncodeSpans, TypedMentionsBecomeBio) {
  const std::vector<TypedMention> mentions = {
      {Mention{1, 3, {"nokia", "2110"}, 5, 1.0}, EntityType::kProduct},
      {Mention{4, 5, {"espoo"}, 6, 1.0}, EntityType::kLocation},
  };
  EXPECT_EQ(encode_spans(5, mentions), tags({"O", "B-PROD", "I-PROD", "O", "B-LOC"}));
  EXPECT_EQ(encode_spans(3, {}), tags({"O", "O", "O"}));
}

class EnsembleTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() { index_ = new SearchIndex(testing::synthetic_index()); }
  static void TearDownTestSuite() { delete index_; }
  static SearchIndex* index_;
};
SearchIndex* EnsembleTest::index_ = nullptr;

TEST_F(EnsembleTest, ZeroModelTypesEveryMentionWithFirstClass) {
  // Gate tie goes to NE and type tie to the first enum value.
  const auto model = LinearTwoHeadModel::zeros({1u << 8, false, {}});
  const auto out = tag_el(words("Whitney Houston sang in Istanbul"), *index_, model);
  EXPECT_EQ(out, tags({"B-PER", "I-PER", "O", "O", "B-PER"}));
}

TEST_F(EnsembleTest, GatedMentionsStayOutside) {
  auto model = LinearTwoHeadModel::zeros({1u << 8, false, {}});
  model.gate.bias[static_cast<std::size_t>(Gate::kOther)] = 1.0;
  const auto out = tag_el(words("Whitney Houston sang in Istanbul"), *index_, model);
  EXPECT_EQ(out, std::vector<BioTag>(5, BioTag::outside()));
}

TEST_F(EnsembleTest, MixedLengthRouting) {
  const auto model = LinearTwoHeadModel::zeros({1u << 8, false, {}});
  const auto baseline = biased_tagger(kSingleHeadOtherClass);
  const Ensemble ensemble(*index_, model, baseline);
  std::vector<TaggedSentence> input;
  for (std::size_t n : {3u, 11u, 12u, 20u, 1u}) {
    TaggedSentence s;
    s.id = std::to_string(n);
    s.tokens = {"istanbul"};
    while (s.tokens.size() < n) s.tokens.push_back("and");
    s.tags.assign(n, BioTag::outside());
    input.push_back(s);
  }
  std::size_t baseline_count = 0;
  for (const auto& s : input) baseline_count += ensemble.route_of(s) == Route::kBaseline;
  EXPECT_EQ(baseline_count, 2u);

  const auto out = tag_all(input, ensemble);
  ASSERT_EQ(out.size(), input.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    EXPECT_EQ(out[i].id, input[i].id);
    EXPECT_EQ(out[i].tags.size(), input[i].tokens.size());
    EXPECT_TRUE(is_well_formed(out[i].tags));
    const bool linked = input[i].tokens.size() <= kDefaultRouteThreshold;
    EXPECT_EQ(out[i].tags[0], linked ? BioTag::begin(EntityType::kPerson) : BioTag::outside())
        << "sentence " << input[i].id;
  }

  const Ensemble all_linking(*index_, model, baseline, {kRouteAllToLinking});
  for (const auto& s : tag_all(input, all_linking)) {
    EXPECT_EQ(s.tags[0], BioTag::begin(EntityType::kPerson));
  }
}

TEST_F(EnsembleTest, TrainingPairsFollowGoldSpans) {
  TaggedSentence s;
  s.tokens = words("the queen visited ankara");
  s.tags = tags({"O", "O", "O", "B-LOC"});
  const std::vector<TaggedSentence> sentences{s};
  const auto set = mention_training_set(sentences, *index_);
  ASSERT_EQ(set.size(), 2u);
  EXPECT_EQ(set[0].rep.segment_tokens(Segment::kMention), words("queen"));
  EXPECT_EQ(set[0].label, MentionLabel::other());
  EXPECT_EQ(set[1].rep.segment_tokens(Segment::kMention), words("ankara"));
  EXPECT_EQ(set[1].label, MentionLabel::entity(EntityType::kLocation));
}

}  // namespace
}  // namespace linkrush
