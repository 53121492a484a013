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

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace linkrush {

struct TokenizerOptions {
  // Maps 'I' to dotless 'ı' instead of 'i'. 'İ' maps to 'i' in both modes.
  bool turkish_casefold = false;

  bool operator==(const TokenizerOptions&) const = default;
};

namespace utf8 {

inline constexpr char32_t kReplacement = 0xFFFD;

// Decodes one code point starting at `pos` and advances it. Invalid or
// truncated sequences consume one byte and yield U+FFFD.
inline char32_t decode(std::string_view text, std::size_t& pos) {
  const auto lead = static_cast<unsigned char>(text[pos]);
  if (lead < 0x80) {
    ++pos;
    return lead;
  }
  int extra = 0;
  char32_t cp = 0;
  if ((lead & 0xE0) == 0xC0) {
    extra = 1;
    cp = lead & 0x1F;
  } else if ((lead & 0xF0) == 0xE0) {
    extra = 2;
    cp = lead & 0x0F;
  } else if ((lead & 0xF8) == 0xF0) {
    extra = 3;
    cp = lead & 0x07;
  } else {
    ++pos;
    return kReplacement;
  }
  if (pos + extra >= text.size()) {
    ++pos;
    return kReplacement;
  }
  for (int i = 1; i <= extra; ++i) {
    const auto c = static_cast<unsigned char>(text[pos + i]);
    if ((c & 0xC0) != 0x80) {
      ++pos;
      return kReplacement;
    }
    cp = (cp << 6) | (c & 0x3F);
  }
  static constexpr char32_t kMin[] = {0, 0x80, 0x800, 0x10000};
  if (cp < kMin[extra] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
    ++pos;
    return kReplacement;
  }
  pos += extra + 1;
  return cp;
}

inline void append(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

inline std::vector<char32_t> decode_all(std::string_view text) {
  std::vector<char32_t> out;
  out.reserve(text.size());
  for (std::size_t pos = 0; pos < text.size();) out.push_back(decode(text, pos));
  return out;
}

}  // namespace utf8

// Simple (one-to-one) lowercase mapping for Latin, Greek and Cyrillic.
inline char32_t fold_case(char32_t c, const TokenizerOptions& options = {}) {
  if (c < 0x80) {
    if (c == U'I' && options.turkish_casefold) return 0x0131;
    return (c >= U'A' && c <= U'Z') ? c + 0x20 : c;
  }
  if (c >= 0xC0 && c <= 0xDE && c != 0xD7) return c + 0x20;
  if (c == 0x0130) return U'i';
  if (c == 0x0178) return 0xFF;
  if ((c >= 0x0100 && c <= 0x012F) || (c >= 0x0132 && c <= 0x0137) ||
      (c >= 0x014A && c <= 0x0177)) {
    return c | 1;
  }
  if ((c >= 0x0139 && c <= 0x0148) || (c >= 0x0179 && c <= 0x017E)) {
    return (c & 1) ? c + 1 : c;
  }
  if (c >= 0x0391 && c <= 0x03AB && c != 0x03A2) return c + 0x20;
  if (c >= 0x0386 && c <= 0x038F) {
    switch (c) {
      case 0x0386: return 0x03AC;
      case 0x0388: return 0x03AD;
      case 0x0389: return 0x03AE;
      case 0x038A: return 0x03AF;
      case 0x038C: return 0x03CC;
      case 0x038E: return 0x03CD;
      case 0x038F: return 0x03CE;
      default: return c;
    }
  }
  if (c >= 0x0410 && c <= 0x042F) return c + 0x20;
  if (c >= 0x0400 && c <= 0x040F) return c + 0x50;
  return c;
}

inline bool is_space(char32_t c) {
  switch (c) {
    case U' ': case U'\t': case U'\n': case U'\v': case U'\f': case U'\r':
    case 0x85: case 0xA0: case 0x1680: case 0x2028: case 0x2029:
    case 0x202F: case 0x205F: case 0x3000: case 0xFEFF:
      return true;
    default:
      return (c >= 0x2000 && c <= 0x200B) || c < 0x20 || c == 0x7F;
  }
}

inline bool is_punct(char32_t c) {
  if (c < 0x80) {
    return (c >= 0x21 && c <= 0x2F) || (c >= 0x3A && c <= 0x40) ||
           (c >= 0x5B && c <= 0x60) || (c >= 0x7B && c <= 0x7E);
  }
  switch (c) {
    case 0xA1: case 0xA7: case 0xAB: case 0xB6: case 0xB7: case 0xBB:
    case 0xBF: case 0x037E: case 0x0387:
      return true;
    default:
      return (c >= 0x2010 && c <= 0x2027) || (c >= 0x2030 && c <= 0x205E) ||
             (c >= 0x3001 && c <= 0x303F);
  }
}

inline bool is_apostrophe(char32_t c) { return c == U'\'' || c == 0x2019; }

// Lowercases, splits on whitespace and splits punctuation off as one-code-point
// tokens. An apostrophe between two word characters stays inside the word
// ("i'm"); U+2019 is normalized to ASCII '\''.
inline std::vector<std::string> tokenize(std::string_view text,
                                         const TokenizerOptions& options = {}) {
  const auto cps = utf8::decode_all(text);
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) tokens.push_back(std::move(current));
    current.clear();
  };
  auto is_word = [](char32_t c) { return !is_space(c) && !is_punct(c); };
  for (std::size_t i = 0; i < cps.size(); ++i) {
    const char32_t c = cps[i];
    if (is_space(c)) {
      flush();
    } else if (is_apostrophe(c) && i > 0 && is_word(cps[i - 1]) &&
               i + 1 < cps.size() && is_word(cps[i + 1])) {
      current.push_back('\'');
    } else if (is_punct(c)) {
      flush();
      utf8::append(current, is_apostrophe(c) ? U'\'' : c);
      flush();
    } else {
      utf8::append(current, fold_case(c, options));
    }
  }
  flush();
  return tokens;
}

inline std::string join(const std::vector<std::string>& tokens,
                        std::string_view separator = " ") {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out.append(separator);
    out.append(tokens[i]);
  }
  return out;
}

// Canonical matching key of a phrase: its tokens joined by single spaces.
inline std::string normalize(std::string_view text,
                             const TokenizerOptions& options = {}) {
  return join(tokenize(text, options));
}

inline std::size_t count_tokens(std::string_view normalized) {
  if (normalized.empty()) return 0;
  std::size_t n = 1;
  for (char c : normalized) n += (c == ' ');
  return n;
}

}  // namespace linkrush
