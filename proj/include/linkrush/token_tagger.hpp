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

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "linkrush/binary_io.hpp"
#include "linkrush/classifier.hpp"
#include "linkrush/linear.hpp"
#include "linkrush/tokenizer.hpp"
#include "linkrush/types.hpp"

namespace linkrush {

// Context-only baseline: a per-token 7-way (six types + O) softmax over
// hashed window features. Predicted types become I-X and BIO repair turns
// run starts into B-X, so adjacent same-type entities merge.
struct TokenTagger {
  std::uint32_t feature_dim = linear::kDefaultFeatureDim;
  std::size_t window = 3;
  linear::SgdConfig sgd;
  linear::SoftmaxLayer layer;

  bool operator==(const TokenTagger& o) const {
    return feature_dim == o.feature_dim && window == o.window && layer == o.layer;
  }
};

struct TokenTaggerConfig {
  std::uint32_t feature_dim = linear::kDefaultFeatureDim;
  std::size_t window = 3;
  linear::SgdConfig sgd;
};

// Position-tagged tokens within ±window of `i`, plus sentence-edge markers
// and a bias feature.
inline SparseFeatures token_window_features(std::span<const std::string> units, std::size_t i,
                                            std::size_t window, std::uint32_t feature_dim) {
  linear::FeatureHasher hasher(feature_dim);
  hasher.add("bias");
  const auto n = static_cast<long long>(units.size());
  const auto w = static_cast<long long>(window);
  for (long long off = -w; off <= w; ++off) {
    const long long j = static_cast<long long>(i) + off;
    std::string key = "w" + std::to_string(off) + '\x1f';
    if (j < 0) {
      key += "<s>";
    } else if (j >= n) {
      key += "</s>";
    } else {
      key += units[static_cast<std::size_t>(j)];
    }
    hasher.add(key);
  }
  if (i > 0) hasher.add("bi\x1f" + units[i - 1] + '\x1f' + units[i]);
  if (i + 1 < units.size()) hasher.add("bi+\x1f" + units[i] + '\x1f' + units[i + 1]);
  return hasher.finish();
}

inline std::size_t tag_class(const BioTag& tag) {
  return tag.is_outside() ? kSingleHeadOtherClass : type_index(tag.type);
}

// Sentences given as normalized units with gold tags.
struct TokenTaggerExample {
  std::vector<std::string> units;
  std::vector<BioTag> tags;
};

inline TokenTagger train_token_tagger(std::span<const TokenTaggerExample> sentences,
                                      const TokenTaggerConfig& config,
                                      std::vector<double>* epoch_losses = nullptr) {
  struct Item {
    SparseFeatures x;
    std::size_t gold;
  };
  std::vector<Item> items;
  for (const auto& s : sentences) {
    if (s.units.size() != s.tags.size()) throw UsageError("token tagger: tag count mismatch");
    for (std::size_t i = 0; i < s.units.size(); ++i) {
      items.push_back({token_window_features(s.units, i, config.window, config.feature_dim),
                       tag_class(s.tags[i])});
    }
  }
  TokenTagger tagger;
  tagger.feature_dim = config.feature_dim;
  tagger.window = config.window;
  tagger.sgd = config.sgd;
  tagger.layer = linear::SoftmaxLayer::zeros(kEntityTypeCount + 1, config.feature_dim);
  std::vector<std::vector<double>> pending;
  auto losses = linear::run_sgd(items.size(), config.sgd, [&](std::span<const std::size_t> batch) {
    pending.clear();
    double total = 0.0;
    for (auto i : batch) {
      const auto p = tagger.layer.probabilities(items[i].x);
      total += linear::cross_entropy(p, items[i].gold);
      pending.push_back(linear::softmax_logit_gradient(p, items[i].gold));
    }
    const double scale = -config.sgd.learning_rate / static_cast<double>(batch.size());
    for (std::size_t j = 0; j < batch.size(); ++j) {
      tagger.layer.apply(pending[j], items[batch[j]].x, scale);
    }
    return total;
  });
  if (epoch_losses) *epoch_losses = std::move(losses);
  if (!tagger.layer.finite()) throw DataError("train: weights diverged; lower the learning rate");
  return tagger;
}

// Raw per-token predictions in IO form (I-X or O), before repair.
inline std::vector<BioTag> raw_token_predictions(const TokenTagger& tagger,
                                                 std::span<const std::string> units) {
  std::vector<BioTag> tags;
  tags.reserve(units.size());
  for (std::size_t i = 0; i < units.size(); ++i) {
    const auto p = tagger.layer.probabilities(
        token_window_features(units, i, tagger.window, tagger.feature_dim));
    const auto c = linear::argmax(p);
    tags.push_back(c == kSingleHeadOtherClass ? BioTag::outside()
                                              : BioTag::inside(kEntityTypes[c]));
  }
  return tags;
}

inline std::vector<BioTag> tag_tokens(const TokenTagger& tagger,
                                      std::span<const std::string> units) {
  auto tags = raw_token_predictions(tagger, units);
  repair_bio(tags);
  return tags;
}

inline std::string serialize_token_tagger(const TokenTagger& tagger) {
  binary::Writer w;
  w.magic(kModelMagic, kModelFormatVersion);
  w.u8(static_cast<std::uint8_t>(ModelKind::kTokenTagger));
  w.u32(tagger.feature_dim);
  w.u64(tagger.window);
  linear::write_sgd_config(w, tagger.sgd);
  tagger.layer.write(w);
  return w.bytes();
}

inline TokenTagger deserialize_token_tagger(binary::Reader& r) {
  r.magic(kModelMagic, kModelFormatVersion);
  if (static_cast<ModelKind>(r.u8()) != ModelKind::kTokenTagger) {
    throw DataError("not a baseline token tagger model");
  }
  TokenTagger t;
  t.feature_dim = r.u32();
  linear::check_feature_dim(t.feature_dim);
  t.window = static_cast<std::size_t>(r.u64());
  t.sgd = linear::read_sgd_config(r);
  t.layer = linear::SoftmaxLayer::read(r);
  if (t.layer.classes != kEntityTypeCount + 1 || t.layer.dim != t.feature_dim) {
    throw DataError("token tagger shape mismatch");
  }
  r.expect_end();
  return t;
}

inline void save_token_tagger(const TokenTagger& tagger, const std::string& path) {
  binary::write_file(path, serialize_token_tagger(tagger));
}

inline TokenTagger load_token_tagger(const std::string& path) {
  auto r = binary::Reader::from_file(path);
  return deserialize_token_tagger(r);
}

}  // namespace linkrush
