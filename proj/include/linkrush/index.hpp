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
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "linkrush/binary_io.hpp"
#include "linkrush/corpus.hpp"
#include "linkrush/error.hpp"
#include "linkrush/tokenizer.hpp"
#include "linkrush/version.hpp"

namespace linkrush {

enum class Field : std::uint8_t { kTitle, kReferredBy, kInterwikies, kAllText };

// Fixed merge order for pooling.
inline constexpr std::array<Field, 4> kFields = {Field::kTitle, Field::kReferredBy,
                                                 Field::kInterwikies, Field::kAllText};

inline constexpr std::string_view field_name(Field f) {
  switch (f) {
    case Field::kTitle: return "title";
    case Field::kReferredBy: return "referred_by";
    case Field::kInterwikies: return "interwikies";
    case Field::kAllText: return "all_text";
  }
  return "?";
}

inline std::optional<Field> parse_field(std::string_view name) {
  for (Field f : kFields) {
    if (field_name(f) == name) return f;
  }
  return std::nullopt;
}

inline std::string field_text(const IndexedDocument& doc, Field f) {
  switch (f) {
    case Field::kTitle: return doc.title;
    case Field::kReferredBy: return join(doc.referred_by, "\n");
    case Field::kInterwikies: return join(doc.interwikies, "\n");
    case Field::kAllText: return doc.all_text;
  }
  return {};
}

struct Posting {
  DocId doc = 0;
  std::uint32_t tf = 0;

  bool operator==(const Posting&) const = default;
};

struct ScoredDoc {
  DocId doc = 0;
  double score = 0.0;

  bool operator==(const ScoredDoc&) const = default;
};

struct Bm25Params {
  double k1 = 1.2;
  double b = 0.75;
};

// Query terms with duplicates removed, first occurrence order kept.
inline std::vector<std::string> distinct_terms(std::span<const std::string> terms) {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  for (const auto& t : terms) {
    if (seen.insert(t).second) out.push_back(t);
  }
  return out;
}

// Inverted index over one document field, scored with BM25.
class FieldIndex {
 public:
  FieldIndex() = default;

  static FieldIndex build(Field field, const std::vector<IndexedDocument>& docs,
                          const TokenizerOptions& options = {}) {
    FieldIndex index;
    index.field_ = field;
    index.doc_lengths_.resize(docs.size(), 0);
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < docs.size(); ++i) {
      const auto tokens = tokenize(field_text(docs[i], field), options);
      index.doc_lengths_[i] = static_cast<std::uint32_t>(tokens.size());
      total += tokens.size();
      std::unordered_map<std::string, std::uint32_t> tf;
      for (const auto& t : tokens) ++tf[t];
      for (auto& [term, count] : tf) {
        // Documents are visited in id order, so postings stay sorted.
        index.postings_[term].push_back({static_cast<DocId>(i), count});
      }
    }
    index.avg_doc_length_ =
        docs.empty() ? 0.0 : static_cast<double>(total) / static_cast<double>(docs.size());
    return index;
  }

  Field field() const { return field_; }
  std::size_t doc_count() const { return doc_lengths_.size(); }
  double avg_doc_length() const { return avg_doc_length_; }
  std::size_t term_count() const { return postings_.size(); }
  const Bm25Params& params() const { return params_; }

  std::uint32_t doc_length(DocId doc) const {
    check_doc(doc);
    return doc_lengths_[doc];
  }

  std::span<const Posting> postings(const std::string& term) const {
    const auto it = postings_.find(term);
    if (it == postings_.end()) return {};
    return it->second;
  }

  std::size_t document_frequency(const std::string& term) const {
    return postings(term).size();
  }

  // ln(1 + (N - df + 0.5) / (df + 0.5)); strictly positive.
  double idf(std::size_t df) const {
    const auto n = static_cast<double>(doc_count());
    const auto d = static_cast<double>(df);
    return std::log(1.0 + (n - d + 0.5) / (d + 0.5));
  }

  double term_weight(double idf_value, std::uint32_t tf, std::uint32_t length) const {
    const double f = tf;
    const double norm =
        params_.k1 * (1.0 - params_.b + params_.b * length / avg_doc_length_);
    return idf_value * f * (params_.k1 + 1.0) / (f + norm);
  }

  double bm25_score(std::span<const std::string> query_terms, DocId doc) const {
    check_doc(doc);
    double score = 0.0;
    for (const auto& term : distinct_terms(query_terms)) {
      const auto list = postings(term);
      const auto it = std::lower_bound(
          list.begin(), list.end(), doc,
          [](const Posting& p, DocId d) { return p.doc < d; });
      if (it == list.end() || it->doc != doc) continue;
      score += term_weight(idf(list.size()), it->tf, doc_lengths_[doc]);
    }
    return score;
  }

  // OR query: documents containing any term, best first, ties by doc id.
  std::vector<ScoredDoc> search(std::span<const std::string> query_terms,
                                std::size_t k) const {
    if (k == 0) throw UsageError("search: k must be at least 1");
    std::vector<double> acc(doc_count(), 0.0);
    std::vector<DocId> touched;
    std::vector<char> hit(doc_count(), 0);
    for (const auto& term : distinct_terms(query_terms)) {
      const auto list = postings(term);
      if (list.empty()) continue;
      const double w = idf(list.size());
      for (const auto& p : list) {
        acc[p.doc] += term_weight(w, p.tf, doc_lengths_[p.doc]);
        if (!hit[p.doc]) {
          hit[p.doc] = 1;
          touched.push_back(p.doc);
        }
      }
    }
    std::vector<ScoredDoc> results;
    results.reserve(touched.size());
    for (DocId d : touched) results.push_back({d, acc[d]});
    const auto better = [](const ScoredDoc& a, const ScoredDoc& b) {
      if (a.score != b.score) return a.score > b.score;
      return a.doc < b.doc;
    };
    const auto keep = std::min(k, results.size());
    std::partial_sort(results.begin(), results.begin() + keep, results.end(), better);
    results.resize(keep);
    return results;
  }

  std::vector<ScoredDoc> search(std::string_view query, std::size_t k,
                                const TokenizerOptions& options = {}) const {
    const auto terms = tokenize(query, options);
    return search(std::span<const std::string>(terms), k);
  }

  void write(binary::Writer& w) const {
    w.u8(static_cast<std::uint8_t>(field_));
    w.f64(params_.k1);
    w.f64(params_.b);
    w.f64(avg_doc_length_);
    w.u64(doc_lengths_.size());
    for (auto len : doc_lengths_) w.u32(len);
    std::vector<const std::string*> terms;
    terms.reserve(postings_.size());
    for (const auto& [term, list] : postings_) terms.push_back(&term);
    std::sort(terms.begin(), terms.end(),
              [](const std::string* a, const std::string* b) { return *a < *b; });
    w.u64(terms.size());
    for (const auto* term : terms) {
      const auto& list = postings_.at(*term);
      w.str(*term);
      w.u64(list.size());
      for (const auto& p : list) {
        w.u32(p.doc);
        w.u32(p.tf);
      }
    }
  }

  static FieldIndex read(binary::Reader& r) {
    FieldIndex index;
    const auto f = r.u8();
    if (f > static_cast<std::uint8_t>(Field::kAllText)) throw DataError("bad field tag");
    index.field_ = static_cast<Field>(f);
    index.params_.k1 = r.f64();
    index.params_.b = r.f64();
    index.avg_doc_length_ = r.f64();
    index.doc_lengths_.resize(r.count(4));
    for (auto& len : index.doc_lengths_) len = r.u32();
    const auto terms = r.count(16);
    for (std::size_t i = 0; i < terms; ++i) {
      auto term = r.str();
      std::vector<Posting> list(r.count(8));
      for (auto& p : list) {
        p.doc = r.u32();
        p.tf = r.u32();
        if (p.doc >= index.doc_lengths_.size()) throw DataError("posting out of range");
      }
      index.postings_.emplace(std::move(term), std::move(list));
    }
    return index;
  }

 private:
  void check_doc(DocId doc) const {
    if (doc >= doc_lengths_.size()) {
      throw UsageError("unknown doc_id " + std::to_string(doc));
    }
  }

  Field field_ = Field::kTitle;
  Bm25Params params_;
  std::unordered_map<std::string, std::vector<Posting>> postings_;
  std::vector<std::uint32_t> doc_lengths_;
  double avg_doc_length_ = 0.0;
};

// The corpus documents together with one index per field.
struct SearchIndex {
  TokenizerOptions tokenizer;
  std::vector<IndexedDocument> documents;
  std::array<FieldIndex, 4> fields;

  const FieldIndex& field(Field f) const { return fields[static_cast<std::size_t>(f)]; }
};

inline std::array<FieldIndex, 4> build_field_indexes(const std::vector<IndexedDocument>& docs,
                                                     const TokenizerOptions& options = {}) {
  if (docs.empty()) throw UsageError("build_index: no documents");
  std::array<FieldIndex, 4> out;
  for (Field f : kFields) out[static_cast<std::size_t>(f)] = FieldIndex::build(f, docs, options);
  return out;
}

inline SearchIndex build_index(Corpus corpus) {
  SearchIndex index;
  index.fields = build_field_indexes(corpus.documents, corpus.tokenizer);
  index.tokenizer = corpus.tokenizer;
  index.documents = std::move(corpus.documents);
  return index;
}

inline constexpr std::string_view kIndexMagic = "LRIX";

inline std::string serialize_index(const SearchIndex& index) {
  binary::Writer w;
  w.magic(kIndexMagic, kIndexFormatVersion);
  w.u8(index.tokenizer.turkish_casefold ? 1 : 0);
  detail::write_documents(w, index.documents);
  for (const auto& f : index.fields) f.write(w);
  return w.bytes();
}

inline SearchIndex deserialize_index(binary::Reader& r) {
  r.magic(kIndexMagic, kIndexFormatVersion);
  SearchIndex index;
  index.tokenizer.turkish_casefold = r.u8() != 0;
  index.documents = detail::read_documents(r);
  for (Field f : kFields) {
    auto& slot = index.fields[static_cast<std::size_t>(f)];
    slot = FieldIndex::read(r);
    if (slot.field() != f || slot.doc_count() != index.documents.size()) {
      throw DataError("index field section mismatch");
    }
  }
  r.expect_end();
  return index;
}

inline void save_index(const SearchIndex& index, const std::string& path) {
  binary::write_file(path, serialize_index(index));
}

inline SearchIndex load_index(const std::string& path) {
  auto r = binary::Reader::from_file(path);
  return deserialize_index(r);
}

}  // namespace linkrush
