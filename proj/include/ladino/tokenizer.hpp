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

#include <string>
#include <string_view>
#include <vector>

#include "ladino/utf8.hpp"

namespace ladino {

namespace detail {

inline bool is_word_joiner(char32_t c) { return c == U'-' || c == U'\'' || c == 0x2019; }

inline bool is_opening_punct(std::string_view tok) {
  return tok == "\xC2\xBF"        // ¿
         || tok == "\xC2\xA1"     // ¡
         || tok == "\xC2\xAB"     // «
         || tok == "\xE2\x80\x9C"  // “
         || tok == "\xE2\x80\x98"  // ‘
         || tok == "(" || tok == "[" || tok == "{";
}

inline bool is_closing_punct(std::string_view tok) {
  return tok == "." || tok == "," || tok == ";" || tok == ":" || tok == "!" || tok == "?" ||
         tok == ")" || tok == "]" || tok == "}" || tok == "%" ||
         tok == "\xC2\xBB"         // »
         || tok == "\xE2\x80\x9D"  // ”
         || tok == "\xE2\x80\x99"  // ’
         || tok == "\xE2\x80\xA6";  // …
}

}  // namespace detail

/// Splits Spanish text into word and punctuation tokens. Every punctuation
/// mark is its own token except hyphens/apostrophes between letters and
/// decimal separators between digits.
inline std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  const std::u32string cps = utf8::decode(text);
  std::u32string word;
  const auto flush = [&] {
    if (!word.empty()) {
      tokens.push_back(utf8::encode(word));
      word.clear();
    }
  };
  for (std::size_t i = 0; i < cps.size(); ++i) {
    const char32_t c = cps[i];
    if (utf8::is_space(c)) {
      flush();
      continue;
    }
    if (!utf8::is_punct(c)) {
      word.push_back(c);
      continue;
    }
    const char32_t prev = word.empty() ? 0 : word.back();
    const char32_t next = i + 1 < cps.size() ? cps[i + 1] : 0;
    const bool joins_letters =
        detail::is_word_joiner(c) && prev && utf8::is_letter(prev) && utf8::is_letter(next);
    const bool joins_digits =
        (c == U'.' || c == U',') && prev && utf8::is_digit(prev) && utf8::is_digit(next);
    if (joins_letters || joins_digits) {
      word.push_back(c);
      continue;
    }
    flush();
    tokens.push_back(utf8::encode(std::u32string(1, c)));
  }
  flush();
  return tokens;
}

/// Joins tokens with single spaces, attaching closing punctuation to the
/// preceding token and opening punctuation to the following one.
inline std::string detokenize(const std::vector<std::string>& tokens) {
  std::string out;
  bool glue_next = true;
  bool in_double_quote = false;
  for (const auto& tok : tokens) {
    if (tok.empty()) continue;
    bool attach_left = detail::is_closing_punct(tok);
    bool opens = detail::is_opening_punct(tok);
    if (tok == "\"") {
      attach_left = in_double_quote;
      opens = !in_double_quote;
      in_double_quote = !in_double_quote;
    }
    if (!glue_next && !attach_left) out.push_back(' ');
    out.append(tok);
    glue_next = opens;
  }
  return out;
}

}  // namespace ladino
