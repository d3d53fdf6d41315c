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

// A port of the parts of the Moses tokenizer.perl that matter for Spanish,
// Ladino, English and Turkish text: symbol splitting, comma and apostrophe
// rules, dot runs and word-final periods governed by non-breaking prefixes.
// No HTML escaping and no aggressive hyphen splitting.

#pragma once

#include <initializer_list>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ladino/utf8.hpp"

namespace ladino {

namespace detail {

// Moses nonbreaking-prefix lists. 1 = never splits, 2 = does not split
// before a number.
using PrefixTable = std::unordered_map<std::string, int>;

inline PrefixTable make_prefix_table(std::initializer_list<const char*> always,
                                     std::initializer_list<const char*> numeric_only) {
  PrefixTable t;
  for (char c = 'A'; c <= 'Z'; ++c) t[std::string(1, c)] = 1;
  for (const char* p : always) t[p] = 1;
  for (const char* p : numeric_only) t[p] = 2;
  return t;
}

inline const PrefixTable& spanish_prefixes() {
  static const PrefixTable table = make_prefix_table(
      {"A.C",  "Apdo", "Av",  "Bco",   "CC.AA", "Da",   "Dep",  "Dn",   "Dr",   "Dra",   "EE.UU", "Excmo",
       "FF.CC", "Fil", "Gral", "J.C",  "Let",   "Lic",  "N.B",  "P.D",  "P.V.P", "Prof", "Pts",   "Rte",
       "S.A",  "S.A.R", "S.E", "S.L",   "S.R.C", "Sr",   "Sra",  "Srta", "Sta",  "Sto",   "T.V.E", "Tel",
       "Ud",   "Uds",  "V.B",  "V.E",   "Vd",    "Vds",  "a/c",  "adj",  "adm\xC3\xB3n", "afmo", "apdo", "av",
       "c",    "c.f",  "c.g",  "cap",   "cm",    "cta",  "dcha", "doc",  "ej",   "entlo", "esq",   "etc",
       "f.c",  "gr",   "grs",  "izq",   "kg",    "km",   "mg",   "mm",   "n\xC3\xBAm", "p", "p.a", "p.ej",
       "ptas", "p\xC3\xA1g", "p\xC3\xA1gs", "q.e.g.e", "q.e.s.m", "s", "s.s.s", "vid", "vol"},
      {});
  return table;
}

inline const PrefixTable& english_prefixes() {
  static const PrefixTable table = make_prefix_table(
      {"Adj",  "Adm",  "Adv",  "Asst", "Bart", "Bldg", "Brig", "Bros", "Capt", "Cmdr", "Col",  "Comdr",
       "Con",  "Corp", "Cpl",  "DR",   "Dr",   "Drs",  "Ens",  "Gen",  "Gov",  "Hon",  "Hr",   "Hosp",
       "Insp", "Lt",   "MM",   "MR",   "MRS",  "MS",   "Maj",  "Messrs", "Mlle", "Mme", "Mr",  "Mrs",
       "Ms",   "Msgr", "Op",   "Ord",  "Pfc",  "Ph",   "Prof", "Pvt",  "Rep",  "Reps", "Res",  "Rev",
       "Rt",   "Sen",  "Sens", "Sfc",  "Sgt",  "Sr",   "St",   "Supt", "Surg", "v",    "vs",   "i.e",
       "rev",  "e.g",  "Rs",   "Jan",  "Feb",  "Mar",  "Apr",  "Jun",  "Jul",  "Aug",  "Sep",  "Oct",
       "Nov",  "Dec"},
      {"No", "Nos", "Art", "Nr", "pp"});
  return table;
}

/// Two-letter Moses code for ISO 639-1/639-3 input ("spa" -> "es").
inline std::string_view moses_lang(std::string_view lang) {
  if (lang == "spa" || lang == "es" || lang == "lad") return "es";
  if (lang == "fra" || lang == "fr") return "fr";
  if (lang == "ita" || lang == "it") return "it";
  if (lang == "eng" || lang == "en") return "en";
  return lang;
}

// Spanish and Ladino use the Spanish list; other languages fall back to the
// English one.
inline const PrefixTable& nonbreaking_prefixes(std::string_view lang) {
  return moses_lang(lang) == "es" ? spanish_prefixes() : english_prefixes();
}

inline bool is_apostrophe(char32_t c) { return c == U'\''; }

inline std::vector<std::u32string> split_space(const std::u32string& s) {
  std::vector<std::u32string> words;
  std::u32string cur;
  for (char32_t c : s) {
    if (utf8::is_space(c)) {
      if (!cur.empty()) words.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) words.push_back(std::move(cur));
  return words;
}

}  // namespace detail

/// Moses-style tokenization. `lang` selects the nonbreaking prefixes and the
/// apostrophe rules: "en" splits contractions before the apostrophe, "fr"/"it"
/// after it, and every other language separates apostrophes entirely.
inline std::vector<std::string> moses_tokenize(std::string_view line, std::string_view lang = "es") {
  lang = detail::moses_lang(lang);
  const std::u32string in = utf8::decode(line);
  std::u32string s;
  s.reserve(in.size() * 2);

  // Symbols, dot runs, commas and apostrophes, in one pass over the input.
  for (std::size_t i = 0; i < in.size(); ++i) {
    const char32_t c = in[i];
    const char32_t prev = i > 0 ? in[i - 1] : U' ';
    const char32_t next = i + 1 < in.size() ? in[i + 1] : U' ';
    if (c < 0x20 && !utf8::is_space(c)) continue;
    if (utf8::is_space(c)) {
      s.push_back(U' ');
    } else if (utf8::is_alnum(c) || c == U'-') {
      s.push_back(c);
    } else if (c == U'.') {
      std::size_t j = i;
      while (j < in.size() && in[j] == U'.') ++j;
      if (j - i >= 2) {
        s += U' ';
        s.append(j - i, U'.');
        s += U' ';
        i = j - 1;
      } else {
        s.push_back(c);
      }
    } else if (c == U',') {
      if (utf8::is_digit(prev) && utf8::is_digit(next)) {
        s.push_back(c);
      } else {
        s += U" , ";
      }
    } else if (detail::is_apostrophe(c)) {
      const bool alpha_prev = utf8::is_letter(prev);
      const bool alpha_next = utf8::is_letter(next);
      if (lang == "en") {
        if (alpha_prev && alpha_next) {
          s += U" '";
        } else if (utf8::is_digit(prev) && next == U's') {
          s += U" '";
        } else {
          s += U" ' ";
        }
      } else if (lang == "fr" || lang == "it") {
        if (alpha_prev && alpha_next) {
          s += U"' ";
        } else {
          s += U" ' ";
        }
      } else {
        s += U" ' ";
      }
    } else {
      s += U' ';
      s.push_back(c);
      s += U' ';
    }
  }

  // Word-final periods.
  auto words = detail::split_space(s);
  const auto& prefixes = detail::nonbreaking_prefixes(lang);
  std::vector<std::string> out;
  out.reserve(words.size() + 2);
  for (std::size_t i = 0; i < words.size(); ++i) {
    const std::u32string& w = words[i];
    if (w.size() >= 2 && w.back() == U'.' && w[w.size() - 2] != U'.') {
      const std::u32string pre = w.substr(0, w.size() - 1);
      bool has_dot = false;
      bool has_alpha = false;
      for (char32_t c : pre) {
        has_dot |= c == U'.';
        has_alpha |= utf8::is_letter(c);
      }
      const std::string pre8 = utf8::encode(pre);
      const auto it = prefixes.find(pre8);
      const int kind = it == prefixes.end() ? 0 : it->second;
      const bool has_next = i + 1 < words.size();
      const bool next_lower = has_next && utf8::is_lower(words[i + 1].front());
      const bool next_digit = has_next && utf8::is_digit(words[i + 1].front());
      if ((has_dot && has_alpha) || kind == 1 || next_lower || (kind == 2 && next_digit)) {
        out.push_back(utf8::encode(w));
      } else {
        out.push_back(pre8);
        out.emplace_back(".");
      }
      continue;
    }
    out.push_back(utf8::encode(w));
  }
  return out;
}

}  // namespace ladino
