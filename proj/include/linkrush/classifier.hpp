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
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "linkrush/binary_io.hpp"
#include "linkrush/error.hpp"
#include "linkrush/linear.hpp"
#include "linkrush/representation.hpp"
#include "linkrush/types.hpp"
#include "linkrush/version.hpp"

namespace linkrush {

using linear::SparseFeatures;

// Hashed (segment, token) and in-segment (segment, bigram) counts,
// L2-normalized. Marker positions carry no features.
inline SparseFeatures featurize(const Representation& rep,
                                std::uint32_t feature_dim = linear::kDefaultFeatureDim) {
  linear::FeatureHasher hasher(feature_dim);
  std::string key;
  for (std::size_t i = 0; i < rep.tokens.size(); ++i) {
    const auto seg = rep.segments[i];
    if (seg == Segment::kCls || seg == Segment::kSep) continue;
    key.assign(segment_name(seg));
    key.push_back('\x1f');
    key.append(rep.tokens[i]);
    hasher.add(key);
    if (i + 1 < rep.tokens.size() && rep.segments[i + 1] == seg) {
      key.push_back('\x1f');
      key.append(rep.tokens[i + 1]);
      hasher.add(key);
    }
  }
  return hasher.finish();
}

// Gold label of a candidate mention: O, or NE with its type.
struct MentionLabel {
  Gate gate = Gate::kOther;
  std::optional<EntityType> type;

  static MentionLabel other() { return {}; }
  static MentionLabel entity(EntityType t) { return {Gate::kEntity, t}; }

  void validate() const {
    if (gate == Gate::kOther && type) {
      throw UsageError("label: an entity type was given with gate O");
    }
    if (gate == Gate::kEntity && !type) throw UsageError("label: NE without an entity type");
  }

  // Class index for the single-head variant; O is the seventh class.
  std::size_t single_head_class() const {
    return gate == Gate::kOther ? kEntityTypeCount : type_index(*type);
  }

  bool operator==(const MentionLabel&) const = default;
};

inline constexpr std::size_t kSingleHeadOtherClass = kEntityTypeCount;

struct ClassifierConfig {
  std::uint32_t feature_dim = linear::kDefaultFeatureDim;
  bool single_head = false;
  linear::SgdConfig sgd;
};

// Binary NE/O head and entity-type head over shared hashed features. In the
// single-head variant the gate head is absent and the type head has a
// seventh class for O.
struct LinearTwoHeadModel {
  ClassifierConfig config;
  linear::SoftmaxLayer gate;
  linear::SoftmaxLayer type;

  static LinearTwoHeadModel zeros(const ClassifierConfig& config) {
    linear::check_feature_dim(config.feature_dim);
    LinearTwoHeadModel m;
    m.config = config;
    if (!config.single_head) m.gate = linear::SoftmaxLayer::zeros(2, config.feature_dim);
    m.type = linear::SoftmaxLayer::zeros(
        config.single_head ? kEntityTypeCount + 1 : kEntityTypeCount, config.feature_dim);
    return m;
  }

  bool single_head() const { return config.single_head; }
  std::uint32_t feature_dim() const { return config.feature_dim; }
  bool finite() const { return gate.finite() && type.finite(); }

  bool operator==(const LinearTwoHeadModel& o) const {
    return config.feature_dim == o.config.feature_dim &&
           config.single_head == o.config.single_head && gate == o.gate && type == o.type;
  }
};

// p_gate is empty for the single-head variant.
struct HeadOutputs {
  std::vector<double> p_gate;
  std::vector<double> p_type;
};

inline HeadOutputs forward(const LinearTwoHeadModel& model, const SparseFeatures& x) {
  HeadOutputs out;
  if (!model.single_head()) out.p_gate = model.gate.probabilities(x);
  out.p_type = model.type.probabilities(x);
  return out;
}

// Summed cross-entropy of both heads; the type head is unsupervised on O.
inline double two_head_loss(std::span<const double> p_gate, std::span<const double> p_type,
                            const MentionLabel& gold) {
  gold.validate();
  if (p_gate.size() != 2 || p_type.size() != kEntityTypeCount) {
    throw UsageError("two_head_loss: expected a 2-way and a 6-way distribution");
  }
  double l = linear::cross_entropy(p_gate, static_cast<std::size_t>(gold.gate));
  if (gold.gate == Gate::kEntity) l += linear::cross_entropy(p_type, type_index(*gold.type));
  return l;
}

inline double single_head_loss(std::span<const double> p_type, const MentionLabel& gold) {
  gold.validate();
  if (p_type.size() != kEntityTypeCount + 1) {
    throw UsageError("single_head_loss: expected a 7-way distribution");
  }
  return linear::cross_entropy(p_type, gold.single_head_class());
}

inline double loss(const LinearTwoHeadModel& model, const HeadOutputs& heads,
                   const MentionLabel& gold) {
  return model.single_head() ? single_head_loss(heads.p_type, gold)
                             : two_head_loss(heads.p_gate, heads.p_type, gold);
}

// dL/dlogits for each head. The type-head gradient is all zero on O
// examples of the two-head model.
struct LogitGradient {
  std::vector<double> gate;
  std::vector<double> type;
};

inline LogitGradient logit_gradient(const LinearTwoHeadModel& model, const HeadOutputs& heads,
                                    const MentionLabel& gold) {
  gold.validate();
  LogitGradient g;
  if (model.single_head()) {
    g.type = linear::softmax_logit_gradient(heads.p_type, gold.single_head_class());
    return g;
  }
  g.gate = linear::softmax_logit_gradient(heads.p_gate, static_cast<std::size_t>(gold.gate));
  if (gold.gate == Gate::kEntity) {
    g.type = linear::softmax_logit_gradient(heads.p_type, type_index(*gold.type));
  } else {
    g.type.assign(model.type.classes, 0.0);
  }
  return g;
}

struct TrainingExample {
  SparseFeatures features;
  MentionLabel label;
};

// Mean loss over a batch.
inline double batch_loss(const LinearTwoHeadModel& model,
                         std::span<const TrainingExample> batch) {
  double total = 0.0;
  for (const auto& ex : batch) total += loss(model, forward(model, ex.features), ex.label);
  return total / static_cast<double>(batch.size());
}

// Dense gradient of batch_loss, laid out like the model parameters.
struct ModelGradient {
  std::vector<double> gate_weights, gate_bias, type_weights, type_bias;
};

inline ModelGradient batch_gradient(const LinearTwoHeadModel& model,
                                    std::span<const TrainingExample> batch) {
  ModelGradient g{std::vector<double>(model.gate.weights.size(), 0.0),
                  std::vector<double>(model.gate.bias.size(), 0.0),
                  std::vector<double>(model.type.weights.size(), 0.0),
                  std::vector<double>(model.type.bias.size(), 0.0)};
  const double scale = 1.0 / static_cast<double>(batch.size());
  for (const auto& ex : batch) {
    const auto d = logit_gradient(model, forward(model, ex.features), ex.label);
    if (!model.single_head()) {
      model.gate.add_outer(d.gate, ex.features, scale, g.gate_weights, g.gate_bias);
    }
    model.type.add_outer(d.type, ex.features, scale, g.type_weights, g.type_bias);
  }
  return g;
}

// Mini-batch gradient descent on the mean summed loss from a zero
// initialization. Returns the model; `epoch_losses` receives the mean
// training loss of each epoch when given.
inline LinearTwoHeadModel train_features(std::span<const TrainingExample> examples,
                                         const ClassifierConfig& config,
                                         std::vector<double>* epoch_losses = nullptr) {
  for (const auto& ex : examples) ex.label.validate();
  auto model = LinearTwoHeadModel::zeros(config);
  std::vector<LogitGradient> pending;
  auto losses = linear::run_sgd(
      examples.size(), config.sgd, [&](std::span<const std::size_t> batch) {
        pending.clear();
        double total = 0.0;
        for (auto i : batch) {
          const auto heads = forward(model, examples[i].features);
          total += loss(model, heads, examples[i].label);
          pending.push_back(logit_gradient(model, heads, examples[i].label));
        }
        const double scale = -config.sgd.learning_rate / static_cast<double>(batch.size());
        for (std::size_t j = 0; j < batch.size(); ++j) {
          const auto& x = examples[batch[j]].features;
          if (!model.single_head()) model.gate.apply(pending[j].gate, x, scale);
          model.type.apply(pending[j].type, x, scale);
        }
        return total;
      });
  if (epoch_losses) *epoch_losses = std::move(losses);
  if (!model.finite()) throw DataError("train: weights diverged; lower the learning rate");
  return model;
}

struct LabeledRepresentation {
  Representation rep;
  MentionLabel label;
};

inline LinearTwoHeadModel train(std::span<const LabeledRepresentation> examples,
                                const ClassifierConfig& config,
                                std::vector<double>* epoch_losses = nullptr) {
  std::vector<TrainingExample> featurized;
  featurized.reserve(examples.size());
  for (const auto& ex : examples) {
    featurized.push_back({featurize(ex.rep, config.feature_dim), ex.label});
  }
  return train_features(featurized, config, epoch_losses);
}

// The gate rule: O from the binary head vetoes the type head. Gate ties go
// to NE, type ties to the lower enum index. Returns nullopt for O.
inline std::optional<EntityType> decide(const HeadOutputs& heads) {
  if (heads.p_gate.empty()) {
    const auto c = linear::argmax(heads.p_type);
    if (c == kSingleHeadOtherClass) return std::nullopt;
    return kEntityTypes[c];
  }
  const auto entity = static_cast<std::size_t>(Gate::kEntity);
  const auto other = static_cast<std::size_t>(Gate::kOther);
  if (heads.p_gate[other] > heads.p_gate[entity]) return std::nullopt;
  return kEntityTypes[linear::argmax(heads.p_type)];
}

inline std::optional<EntityType> predict(const LinearTwoHeadModel& model,
                                         const Representation& rep) {
  return decide(forward(model, featurize(rep, model.feature_dim())));
}

inline constexpr std::string_view kModelMagic = "LRMD";

enum class ModelKind : std::uint8_t { kTwoHead = 0, kSingleHead = 1, kTokenTagger = 2 };

inline std::string serialize_model(const LinearTwoHeadModel& model) {
  binary::Writer w;
  w.magic(kModelMagic, kModelFormatVersion);
  w.u8(static_cast<std::uint8_t>(model.single_head() ? ModelKind::kSingleHead
                                                     : ModelKind::kTwoHead));
  w.u32(model.feature_dim());
  linear::write_sgd_config(w, model.config.sgd);
  if (!model.single_head()) model.gate.write(w);
  model.type.write(w);
  return w.bytes();
}

inline LinearTwoHeadModel deserialize_model(binary::Reader& r) {
  r.magic(kModelMagic, kModelFormatVersion);
  const auto kind = static_cast<ModelKind>(r.u8());
  if (kind != ModelKind::kTwoHead && kind != ModelKind::kSingleHead) {
    throw DataError("not a mention classifier model");
  }
  LinearTwoHeadModel m;
  m.config.single_head = kind == ModelKind::kSingleHead;
  m.config.feature_dim = r.u32();
  linear::check_feature_dim(m.config.feature_dim);
  m.config.sgd = linear::read_sgd_config(r);
  if (!m.single_head()) m.gate = linear::SoftmaxLayer::read(r);
  m.type = linear::SoftmaxLayer::read(r);
  const auto type_classes = m.single_head() ? kEntityTypeCount + 1 : kEntityTypeCount;
  if (m.type.classes != type_classes || m.type.dim != m.config.feature_dim ||
      (!m.single_head() && (m.gate.classes != 2 || m.gate.dim != m.config.feature_dim))) {
    throw DataError("model head shapes do not match the header");
  }
  r.expect_end();
  return m;
}

inline void save_model(const LinearTwoHeadModel& model, const std::string& path) {
  binary::write_file(path, serialize_model(model));
}

inline LinearTwoHeadModel load_model(const std::string& path) {
  auto r = binary::Reader::from_file(path);
  return deserialize_model(r);
}

}  // namespace linkrush
