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

#include "linkrush/binary_io.hpp"
#include "linkrush/classifier.hpp"
#include "linkrush/conll.hpp"
#include "linkrush/corpus.hpp"
#include "linkrush/ensemble.hpp"
#include "linkrush/error.hpp"
#include "linkrush/eval.hpp"
#include "linkrush/index.hpp"
#include "linkrush/linear.hpp"
#include "linkrush/mention.hpp"
#include "linkrush/pipeline.hpp"
#include "linkrush/representation.hpp"
#include "linkrush/retrieval.hpp"
#include "linkrush/token_tagger.hpp"
#include "linkrush/tokenizer.hpp"
#include "linkrush/types.hpp"
#include "linkrush/version.hpp"
