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

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>
#include <string_view>
#include <vector>

#include "linkrush/error.hpp"

namespace linkrush::binary {

inline void write_file(const std::string& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot open " + path + " for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw DataError("failed writing " + path);
}

// Little-endian writer for the versioned container files.
class Writer {
 public:
  void magic(std::string_view tag, std::uint8_t version) {
    buffer_.append(tag);
    u8(version);
  }

  void u8(std::uint8_t v) { buffer_.push_back(static_cast<char>(v)); }

  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) u8(static_cast<std::uint8_t>(v >> (8 * i)));
  }

  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) u8(static_cast<std::uint8_t>(v >> (8 * i)));
  }

  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }

  void str(std::string_view s) {
    u64(s.size());
    buffer_.append(s);
  }

  void strings(const std::vector<std::string>& values) {
    u64(values.size());
    for (const auto& s : values) str(s);
  }

  void doubles(const std::vector<double>& values) {
    u64(values.size());
    for (double v : values) f64(v);
  }

  const std::string& bytes() const { return buffer_; }

  void save(const std::string& path) const { write_file(path, buffer_); }

 private:
  std::string buffer_;
};

class Reader {
 public:
  explicit Reader(std::string bytes, std::string what = "container")
      : bytes_(std::move(bytes)), what_(std::move(what)) {}

  static Reader from_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path);
    std::string bytes((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
    return Reader(std::move(bytes), path);
  }

  // Checks the magic tag and returns the version byte.
  std::uint8_t magic(std::string_view tag, std::uint8_t max_version) {
    need(tag.size() + 1);
    if (std::string_view(bytes_).substr(pos_, tag.size()) != tag) {
      throw DataError(what_ + ": bad magic, expected " + std::string(tag));
    }
    pos_ += tag.size();
    const auto version = u8();
    if (version == 0 || version > max_version) {
      throw DataError(what_ + ": unsupported format version " +
                      std::to_string(version));
    }
    return version;
  }

  std::uint8_t u8() {
    need(1);
    return static_cast<std::uint8_t>(bytes_[pos_++]);
  }

  std::uint32_t u32() {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t{u8()} << (8 * i);
    return v;
  }

  std::uint64_t u64() {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t{u8()} << (8 * i);
    return v;
  }

  double f64() { return std::bit_cast<double>(u64()); }

  std::string str() {
    const auto n = length();
    std::string s = bytes_.substr(pos_, n);
    pos_ += n;
    return s;
  }

  std::vector<std::string> strings() {
    const auto n = count(8);
    std::vector<std::string> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(str());
    return out;
  }

  std::vector<double> doubles() {
    const auto n = count(8);
    std::vector<double> out(n);
    for (auto& v : out) v = f64();
    return out;
  }

  // Reads an element count and checks it against the bytes left.
  std::size_t count(std::size_t min_element_size) {
    const auto n = u64();
    if (min_element_size && n > (bytes_.size() - pos_) / min_element_size) {
      throw DataError(what_ + ": truncated or corrupt");
    }
    return static_cast<std::size_t>(n);
  }

  void expect_end() const {
    if (pos_ != bytes_.size()) throw DataError(what_ + ": trailing bytes");
  }

 private:
  std::size_t length() {
    const auto n = u64();
    need(n);
    return static_cast<std::size_t>(n);
  }

  void need(std::uint64_t n) const {
    if (n > bytes_.size() - pos_) throw DataError(what_ + ": truncated");
  }

  std::string bytes_;
  std::string what_;
  std::size_t pos_ = 0;
};

}  // namespace linkrush::binary
