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


// Umbrella header for the Spanish -> Judeo-Spanish toolkit.

#pragma once

#include "ladino/analysis.hpp"
#include "ladino/bleu.hpp"
#include "ladino/contribution_store.hpp"
#include "ladino/corpus.hpp"
#include "ladino/error.hpp"
#include "ladino/features.hpp"
#include "ladino/fetch.hpp"
#include "ladino/lexicon.hpp"
#include "ladino/morphogen.hpp"
#include "ladino/moses_tokenizer.hpp"
#include "ladino/orthography.hpp"
#include "ladino/service.hpp"
#include "ladino/text_io.hpp"
#include "ladino/tokenizer.hpp"
#include "ladino/translator.hpp"
#include "ladino/utf8.hpp"

#ifndef LADINO_VERSION
#define LADINO_VERSION "0.1.0"
#endif

namespace ladino {

inline constexpr const char* kVersion = LADINO_VERSION;

}  // namespace ladino
