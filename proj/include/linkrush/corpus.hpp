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
#include <cstdint>
#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <json.hpp>

#include "linkrush/binary_io.hpp"
#include "linkrush/error.hpp"
#include "linkrush/tokenizer.hpp"
#include "linkrush/version.hpp"

namespace linkrush {

struct Link {
  std::string target;
  std::string anchor;

  bool operator==(const Link&) const = default;
};

// One raw corpus page before indexing.
struct Article {
  std::string title;
  std::string body;  // paragraphs separated by blank lines
  std::vector<Link> links;
  std::vector<std::string> categories;
};

using DocId = std::uint32_t;

// The four searchable fields derived from one article, plus its lead.
struct IndexedDocument {
  DocId doc_id = 0;
  std::string title;
  // Normalized anchor phrases, longest (token count) first; contains the title.
  std::vector<std::string> referred_by;
  std::vector<std::string> interwikies;
  std::string all_text;
  std::string lead;

  bool operator==(const IndexedDocument&) const = default;
};

// Returns every [[Target]] / [[Target|anchor]] occurrence in order. Unclosed
// and nested spans are skipped.
inline std::vector<Link> extract_links(std::string_view markup) {
  std::vector<Link> links;
  std::size_t pos = 0;
  while ((pos = markup.find("[[", pos)) != std::string_view::npos) {
    const auto start = pos + 2;
    const auto close = markup.find("]]", start);
    if (close == std::string_view::npos) break;
    const auto nested = markup.find("[[", start);
    if (nested != std::string_view::npos && nested < close) {
      pos = nested;
      continue;
    }
    std::string_view inner = markup.substr(start, close - start);
    pos = close + 2;
    if (inner.find('[') != std::string_view::npos ||
        inner.find(']') != std::string_view::npos) {
      continue;
    }
    const auto bar = inner.find('|');
    std::string target(inner.substr(0, bar));
    std::string anchor =
        bar == std::string_view::npos ? target : std::string(inner.substr(bar + 1));
    if (normalize(target).empty()) continue;
    if (normalize(anchor).empty()) anchor = target;
    links.push_back({std::move(target), std::move(anchor)});
  }
  return links;
}

// Replaces well-formed link markup with its visible anchor text.
inline std::string strip_link_markup(std::string_view markup) {
  std::string out;
  std::size_t pos = 0;
  while (true) {
    const auto open = markup.find("[[", pos);
    if (open == std::string_view::npos) break;
    const auto close = markup.find("]]", open + 2);
    if (close == std::string_view::npos) break;
    std::string_view inner = markup.substr(open + 2, close - open - 2);
    if (inner.find('[') != std::string_view::npos) {
      out.append(markup.substr(pos, open + 2 - pos));
      pos = open + 2;
      continue;
    }
    out.append(markup.substr(pos, open - pos));
    const auto bar = inner.find('|');
    out.append(bar == std::string_view::npos ? inner : inner.substr(bar + 1));
    pos = close + 2;
  }
  out.append(markup.substr(pos));
  return out;
}

namespace detail {

inline std::string json_string(const nlohmann::json& record, const char* key,
                               std::size_t line, bool required) {
  const auto it = record.find(key);
  if (it == record.end()) {
    if (required) {
      throw DataError("line " + std::to_string(line) + ": missing \"" + key + "\"");
    }
    return {};
  }
  if (!it->is_string()) {
    throw DataError("line " + std::to_string(line) + ": \"" + key +
                    "\" must be a string");
  }
  return it->get<std::string>();
}

inline Article parse_record(std::string_view text, std::size_t line) {
  nlohmann::json record;
  try {
    record = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError("line " + std::to_string(line) + ": " + e.what());
  }
  if (!record.is_object()) {
    throw DataError("line " + std::to_string(line) + ": record is not an object");
  }
  Article article;
  article.title = json_string(record, "title", line, true);
  if (normalize(article.title).empty()) {
    throw DataError("line " + std::to_string(line) + ": empty title");
  }
  const std::string text_field = json_string(record, "text", line, false);

  if (const auto it = record.find("links"); it != record.end()) {
    if (!it->is_array()) {
      throw DataError("line " + std::to_string(line) + ": \"links\" must be an array");
    }
    for (const auto& l : *it) {
      if (!l.is_object()) {
        throw DataError("line " + std::to_string(line) + ": link is not an object");
      }
      Link link{json_string(l, "target", line, true), json_string(l, "anchor", line, false)};
      if (normalize(link.anchor).empty()) link.anchor = link.target;
      article.links.push_back(std::move(link));
    }
  } else {
    article.links = extract_links(text_field);
  }
  article.body = strip_link_markup(text_field);

  if (const auto it = record.find("categories"); it != record.end()) {
    if (!it->is_array()) {
      throw DataError("line " + std::to_string(line) +
                      ": \"categories\" must be an array");
    }
    for (const auto& c : *it) {
      if (!c.is_string()) {
        throw DataError("line " + std::to_string(line) + ": category must be a string");
      }
      article.categories.push_back(c.get<std::string>());
    }
  }
  return article;
}

}  // namespace detail

// Reads the JSON-lines article stream. Blank lines are skipped; titles must be
// unique after normalization.
inline std::vector<Article> parse_corpus(std::istream& source,
                                         const TokenizerOptions& options = {}) {
  std::vector<Article> articles;
  std::map<std::string, std::vector<std::size_t>> lines_by_key;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(source, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    articles.push_back(detail::parse_record(line, line_no));
    lines_by_key[normalize(articles.back().title, options)].push_back(line_no);
  }

  std::string duplicates;
  for (const auto& article : articles) {
    auto it = lines_by_key.find(normalize(article.title, options));
    if (it == lines_by_key.end() || it->second.size() < 2) continue;
    if (!duplicates.empty()) duplicates += "; ";
    duplicates += "\"" + article.title + "\" on lines";
    for (auto l : it->second) duplicates += " " + std::to_string(l);
    lines_by_key.erase(it);
  }
  if (!duplicates.empty()) throw DataError("duplicate titles: " + duplicates);
  return articles;
}

inline std::vector<Article> parse_corpus(std::string_view source,
                                         const TokenizerOptions& options = {}) {
  std::istringstream in{std::string(source)};
  return parse_corpus(in, options);
}

// Longest phrase first; equal token counts in byte order.
inline bool referred_by_order(const std::string& a, const std::string& b) {
  const auto na = count_tokens(a);
  const auto nb = count_tokens(b);
  if (na != nb) return na > nb;
  return a < b;
}

// For each article title, the normalized anchors of links pointing at it from
// other articles plus the title itself. Dangling targets are dropped.
inline std::map<std::string, std::vector<std::string>> build_referred_by(
    const std::vector<Article>& articles, const TokenizerOptions& options = {}) {
  std::unordered_map<std::string, std::size_t> by_key;
  for (std::size_t i = 0; i < articles.size(); ++i) {
    by_key.emplace(normalize(articles[i].title, options), i);
  }
  std::vector<std::set<std::string>> anchors(articles.size());
  for (std::size_t i = 0; i < articles.size(); ++i) {
    anchors[i].insert(normalize(articles[i].title, options));
  }
  for (std::size_t source = 0; source < articles.size(); ++source) {
    for (const auto& link : articles[source].links) {
      const auto it = by_key.find(normalize(link.target, options));
      if (it == by_key.end() || it->second == source) continue;
      auto anchor = normalize(link.anchor, options);
      if (anchor.empty()) anchor = normalize(link.target, options);
      anchors[it->second].insert(std::move(anchor));
    }
  }
  std::map<std::string, std::vector<std::string>> result;
  for (std::size_t i = 0; i < articles.size(); ++i) {
    std::vector<std::string> phrases(anchors[i].begin(), anchors[i].end());
    std::sort(phrases.begin(), phrases.end(), referred_by_order);
    result.emplace(articles[i].title, std::move(phrases));
  }
  return result;
}

// Paragraphs are maximal runs of non-blank lines.
inline std::vector<std::string> split_paragraphs(std::string_view body) {
  std::vector<std::string> paragraphs;
  std::string current;
  std::size_t pos = 0;
  while (pos <= body.size()) {
    auto end = body.find('\n', pos);
    if (end == std::string_view::npos) end = body.size();
    std::string_view line = body.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) {
      if (!current.empty()) paragraphs.push_back(std::move(current));
      current.clear();
    } else {
      if (!current.empty()) current.push_back('\n');
      current.append(line);
    }
    pos = end + 1;
  }
  if (!current.empty()) paragraphs.push_back(std::move(current));
  return paragraphs;
}

inline std::string lead_of(std::string_view body) {
  const auto paragraphs = split_paragraphs(body);
  if (paragraphs.size() < 2) return std::string(body);
  return paragraphs[0] + "\n\n" + paragraphs[1];
}

inline std::vector<IndexedDocument> build_documents(
    const std::vector<Article>& articles,
    const std::map<std::string, std::vector<std::string>>& referred_by) {
  std::vector<IndexedDocument> docs;
  docs.reserve(articles.size());
  for (std::size_t i = 0; i < articles.size(); ++i) {
    const Article& article = articles[i];
    IndexedDocument doc;
    doc.doc_id = static_cast<DocId>(i);
    doc.title = article.title;
    if (auto it = referred_by.find(article.title); it != referred_by.end()) {
      doc.referred_by = it->second;
    } else {
      doc.referred_by = {normalize(article.title)};
    }
    std::set<std::string> seen;
    for (const auto& link : article.links) {
      if (seen.insert(link.target).second) doc.interwikies.push_back(link.target);
    }
    doc.all_text = article.title + "\n" + article.body + "\n" +
                   join(doc.interwikies, "\n") + "\n" + join(doc.referred_by, "\n") +
                   "\n" + join(article.categories, "\n");
    doc.lead = lead_of(article.body);
    docs.push_back(std::move(doc));
  }
  return docs;
}

// Documents plus the tokenizer mode they were normalized with.
struct Corpus {
  TokenizerOptions tokenizer;
  std::vector<IndexedDocument> documents;
};

inline Corpus ingest(std::istream& source, const TokenizerOptions& options = {}) {
  const auto articles = parse_corpus(source, options);
  return {options, build_documents(articles, build_referred_by(articles, options))};
}

namespace detail {

inline void write_documents(binary::Writer& w, const std::vector<IndexedDocument>& docs) {
  w.u64(docs.size());
  for (const auto& d : docs) {
    w.u32(d.doc_id);
    w.str(d.title);
    w.strings(d.referred_by);
    w.strings(d.interwikies);
    w.str(d.all_text);
    w.str(d.lead);
  }
}

inline std::vector<IndexedDocument> read_documents(binary::Reader& r) {
  const auto n = r.count(4);
  std::vector<IndexedDocument> docs(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto& d = docs[i];
    d.doc_id = r.u32();
    if (d.doc_id != i) throw DataError("document ids are not dense");
    d.title = r.str();
    d.referred_by = r.strings();
    d.interwikies = r.strings();
    d.all_text = r.str();
    d.lead = r.str();
  }
  return docs;
}

}  // namespace detail

inline constexpr std::string_view kCorpusMagic = "LRCP";

inline void save_corpus(const Corpus& corpus, const std::string& path) {
  binary::Writer w;
  w.magic(kCorpusMagic, kCorpusFormatVersion);
  w.u8(corpus.tokenizer.turkish_casefold ? 1 : 0);
  detail::write_documents(w, corpus.documents);
  w.save(path);
}


inline Corpus read_corpus(binary::Reader& r) {
  r.magic(kCorpusMagic, kCorpusFormatVersion);
  Corpus corpus;
  corpus.tokenizer.turkish_casefold = r.u8() != 0;
  corpus.documents = detail::read_documents(r);
  r.expect_end();
  return corpus;
}

inline Corpus load_corpus(const std::string& path) {
  auto r = binary::Reader::from_file(path);
  return read_corpus(r);
}

}  // namespace linkrush
