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
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "linkrush/error.hpp"
#include "linkrush/types.hpp"

namespace linkrush {

inline constexpr std::string_view kEmptyColumns = "_ _";

struct ConllData {
  std::vector<TaggedSentence> sentences;
  // Dangling I-X labels and similar non-fatal findings, with line numbers.
  std::vector<std::string> warnings;
};

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    const auto start = line.find_first_not_of(" \t\r", pos);
    if (start == std::string_view::npos) break;
    auto end = line.find_first_of(" \t\r", start);
    if (end == std::string_view::npos) end = line.size();
    out.push_back(line.substr(start, end - start));
    pos = end;
  }
  return out;
}

inline std::string comment_id(std::string_view comment) {
  const auto parts = split_ws(comment.substr(1));
  if (parts.size() >= 2 && parts[0] == "id") return std::string(parts[1]);
  return {};
}

}  // namespace detail

// Sentences are separated by blank lines; '#' lines before a sentence's first
// token are comments, "# id <x>" names the sentence. Data lines are
// "<token> <tag>" or "<token> <middle columns...> <tag>".
inline ConllData read_conll(std::istream& in) {
  ConllData data;
  TaggedSentence current;
  std::size_t line_no = 0;
  auto finish = [&] {
    if (!current.tokens.empty()) {
      if (current.id.empty()) current.id = std::to_string(data.sentences.size());
      data.sentences.push_back(std::move(current));
    }
    current = TaggedSentence{};
  };
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto cols = detail::split_ws(line);
    if (cols.empty()) {
      finish();
      continue;
    }
    if (line.front() == '#' && current.tokens.empty()) {
      current.comments.push_back(line);
      if (current.id.empty()) current.id = detail::comment_id(line);
      continue;
    }
    if (cols.size() < 2) {
      throw DataError("line " + std::to_string(line_no) + ": expected a token and a tag");
    }
    const auto tag = BioTag::parse(cols.back());
    if (!tag) {
      throw DataError("line " + std::to_string(line_no) + ": malformed tag '" +
                      std::string(cols.back()) + "'");
    }
    if (tag->prefix == BioTag::Prefix::kInside) {
      const bool continues = !current.tags.empty() && !current.tags.back().is_outside() &&
                             current.tags.back().type == tag->type;
      if (!continues) {
        data.warnings.push_back("line " + std::to_string(line_no) + ": " + tag->str() +
                                " does not continue an entity");
      }
    }
    std::string middle;
    if (cols.size() == 2) {
      middle = kEmptyColumns;
    } else {
      for (std::size_t i = 1; i + 1 < cols.size(); ++i) {
        if (i > 1) middle.push_back(' ');
        middle.append(cols[i]);
      }
    }
    current.tokens.emplace_back(cols.front());
    current.columns.push_back(std::move(middle));
    current.tags.push_back(*tag);
  }
  finish();
  return data;
}

inline ConllData read_conll(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  return read_conll(in);
}

inline ConllData parse_conll(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_conll(in);
}

// Four-column form; sentences without comments get "# id <id>".
inline void write_conll(std::ostream& out, const std::vector<TaggedSentence>& sentences) {
  for (const auto& s : sentences) {
    if (s.comments.empty()) {
      out << "# id " << s.id << '\n';
    } else {
      for (const auto& c : s.comments) out << c << '\n';
    }
    for (std::size_t i = 0; i < s.tokens.size(); ++i) {
      const std::string_view middle =
          i < s.columns.size() && !s.columns[i].empty() ? std::string_view(s.columns[i])
                                                         : kEmptyColumns;
      out << s.tokens[i] << ' ' << middle << ' ' << s.tags[i].str() << '\n';
    }
    out << '\n';
  }
}

inline std::string format_conll(const std::vector<TaggedSentence>& sentences) {
  std::ostringstream out;
  write_conll(out, sentences);
  return out.str();
}

inline void write_conll(const std::string& path, const std::vector<TaggedSentence>& sentences) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot open " + path + " for writing");
  write_conll(out, sentences);
}

}  // namespace linkrush
