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
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "linkrush/binary_io.hpp"
#include "linkrush/error.hpp"

// Shared pieces of the linear models: hashed sparse features, softmax layers
// and the mini-batch SGD driver.
namespace linkrush::linear {

struct Feature {
  std::uint32_t index = 0;
  double value = 0.0;

  bool operator==(const Feature&) const = default;
};

// Sorted by index, no duplicate indices.
using SparseFeatures = std::vector<Feature>;

inline constexpr std::uint32_t kDefaultFeatureDim = 1u << 18;

inline std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline void check_feature_dim(std::uint32_t dim) {
  if (dim == 0 || !std::has_single_bit(dim)) {
    throw UsageError("feature_dim must be a power of two, got " + std::to_string(dim));
  }
}

// Accumulates hashed string features, then emits an L2-normalized vector.
class FeatureHasher {
 public:
  explicit FeatureHasher(std::uint32_t dim) : dim_(dim) { check_feature_dim(dim); }

  void add(std::string_view key, double count = 1.0) {
    raw_.push_back({static_cast<std::uint32_t>(fnv1a(key) & (dim_ - 1)), count});
  }

  SparseFeatures finish() {
    std::sort(raw_.begin(), raw_.end(),
              [](const Feature& a, const Feature& b) { return a.index < b.index; });
    SparseFeatures out;
    for (const auto& f : raw_) {
      if (!out.empty() && out.back().index == f.index) {
        out.back().value += f.value;
      } else {
        out.push_back(f);
      }
    }
    raw_.clear();
    double norm = 0.0;
    for (const auto& f : out) norm += f.value * f.value;
    if (norm > 0.0) {
      norm = std::sqrt(norm);
      for (auto& f : out) f.value /= norm;
    }
    return out;
  }

 private:
  std::uint32_t dim_;
  SparseFeatures raw_;
};

inline std::vector<double> softmax(std::span<const double> logits) {
  std::vector<double> p(logits.begin(), logits.end());
  if (p.empty()) return p;
  const double top = *std::max_element(p.begin(), p.end());
  double sum = 0.0;
  for (auto& v : p) {
    v = std::exp(v - top);
    sum += v;
  }
  for (auto& v : p) v /= sum;
  return p;
}

// First index of the maximum.
inline std::size_t argmax(std::span<const double> values) {
  return static_cast<std::size_t>(std::max_element(values.begin(), values.end()) -
                                  values.begin());
}

// -ln p[gold], clamped away from ln 0.
inline double cross_entropy(std::span<const double> p, std::size_t gold) {
  return -std::log(std::max(p[gold], 1e-300));
}

// Affine map from the hashed feature space to `classes` logits. Weights are
// row-major, one row per class.
struct SoftmaxLayer {
  std::size_t classes = 0;
  std::uint32_t dim = 0;
  std::vector<double> weights;
  std::vector<double> bias;

  static SoftmaxLayer zeros(std::size_t classes, std::uint32_t dim) {
    return {classes, dim, std::vector<double>(classes * dim, 0.0),
            std::vector<double>(classes, 0.0)};
  }

  bool empty() const { return classes == 0; }

  std::vector<double> logits(const SparseFeatures& x) const {
    std::vector<double> z(bias);
    for (const auto& f : x) {
      if (f.index >= dim) {
        throw UsageError("feature index " + std::to_string(f.index) +
                         " outside dimension " + std::to_string(dim));
      }
      for (std::size_t c = 0; c < classes; ++c) z[c] += weights[c * dim + f.index] * f.value;
    }
    return z;
  }

  std::vector<double> probabilities(const SparseFeatures& x) const {
    const auto z = logits(x);
    return softmax(z);
  }

  // target_w += scale * d ⊗ x, target_b += scale * d.
  void add_outer(std::span<const double> d, const SparseFeatures& x, double scale,
                 std::vector<double>& target_w, std::vector<double>& target_b) const {
    for (std::size_t c = 0; c < classes; ++c) {
      const double g = scale * d[c];
      if (g == 0.0) continue;
      target_b[c] += g;
      for (const auto& f : x) target_w[c * dim + f.index] += g * f.value;
    }
  }

  void apply(std::span<const double> d, const SparseFeatures& x, double scale) {
    add_outer(d, x, scale, weights, bias);
  }

  bool finite() const {
    const auto ok = [](double v) { return std::isfinite(v); };
    return std::all_of(weights.begin(), weights.end(), ok) &&
           std::all_of(bias.begin(), bias.end(), ok);
  }

  void write(binary::Writer& w) const {
    w.u64(classes);
    w.u32(dim);
    w.doubles(weights);
    w.doubles(bias);
  }

  static SoftmaxLayer read(binary::Reader& r) {
    SoftmaxLayer layer;
    layer.classes = static_cast<std::size_t>(r.u64());
    layer.dim = r.u32();
    layer.weights = r.doubles();
    layer.bias = r.doubles();
    if (layer.weights.size() != layer.classes * layer.dim ||
        layer.bias.size() != layer.classes) {
      throw DataError("softmax layer shape mismatch");
    }
    return layer;
  }

  bool operator==(const SoftmaxLayer&) const = default;
};

// Gradient of the loss w.r.t. the logits of a softmax head under
// cross-entropy: p - onehot(gold).
inline std::vector<double> softmax_logit_gradient(std::span<const double> p, std::size_t gold) {
  std::vector<double> d(p.begin(), p.end());
  d[gold] -= 1.0;
  return d;
}

struct SgdConfig {
  double learning_rate = 1.0;
  std::size_t epochs = 100;
  std::size_t batch_size = 8;
  std::uint64_t seed = 1;
};

// Fisher-Yates over mt19937_64 so the permutation is the same on every
// standard library.
inline void shuffle(std::vector<std::size_t>& order, std::mt19937_64& rng) {
  for (std::size_t i = order.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng() % i);
    std::swap(order[i - 1], order[j]);
  }
}

// Runs `epochs` passes over n examples in shuffled mini-batches. `step`
// receives the batch indices and returns the summed loss of the batch
// computed before its update. Returns the mean loss per epoch.
template <class Step>
std::vector<double> run_sgd(std::size_t n, const SgdConfig& config, Step&& step) {
  if (n == 0) throw UsageError("train: no examples");
  if (config.batch_size == 0) throw UsageError("train: batch_size must be at least 1");
  std::mt19937_64 rng(config.seed);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<double> epoch_losses;
  epoch_losses.reserve(config.epochs);
  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    shuffle(order, rng);
    double total = 0.0;
    for (std::size_t begin = 0; begin < n; begin += config.batch_size) {
      const auto end = std::min(n, begin + config.batch_size);
      total += step(std::span<const std::size_t>(order.data() + begin, end - begin));
    }
    epoch_losses.push_back(total / static_cast<double>(n));
  }
  return epoch_losses;
}

inline void write_sgd_config(binary::Writer& w, const SgdConfig& c) {
  w.f64(c.learning_rate);
  w.u64(c.epochs);
  w.u64(c.batch_size);
  w.u64(c.seed);
}

inline SgdConfig read_sgd_config(binary::Reader& r) {
  SgdConfig c;
  c.learning_rate = r.f64();
  c.epochs = static_cast<std::size_t>(r.u64());
  c.batch_size = static_cast<std::size_t>(r.u64());
  c.seed = r.u64();
  return c;
}

}  // namespace linkrush::linear
