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

namespace linkrush {

inline constexpr const char* kToolVersion = "0.3.0";

inline constexpr std::uint8_t kCorpusFormatVersion = 1;
inline constexpr std::uint8_t kIndexFormatVersion = 1;
inline constexpr std::uint8_t kModelFormatVersion = 1;

}  // namespace linkrush
