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

// Minimal UTF-8 and character-class helpers. Case mapping covers ASCII,
// Latin-1, Latin Extended-A, basic Greek and Cyrillic, which is everything
// the Spanish / Ladino / English / Turkish corpora need.

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "ladino/error.hpp"

namespace ladino::utf8 {

inline constexpr char32_t kReplacement = 0xFFFD;

namespace detail {

// Decodes one sequence at s[i]; returns its length or 0 when malformed.
inline std::size_t decode_one(std::string_view s, std::size_t i, char32_t& cp) {
  const auto b0 = static_cast<unsigned char>(s[i]);
  if (b0 < 0x80) {
    cp = b0;
    return 1;
  }
  std::size_t len;
  char32_t min;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
    min = 0x80;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
    min = 0x800;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
    min = 0x10000;
  } else {
    return 0;
  }
  if (i + len > s.size()) return 0;
  for (std::size_t k = 1; k < len; ++k) {
    const auto b = static_cast<unsigned char>(s[i + k]);
    if ((b & 0xC0) != 0x80) return 0;
    cp = (cp << 6) | (b & 0x3F);
  }
  if (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return 0;
  return len;
}

}  // namespace detail

inline bool valid(std::string_view s) {
  char32_t cp;
  for (std::size_t i = 0; i < s.size();) {
    const std::size_t n = detail::decode_one(s, i, cp);
    if (n == 0) return false;
    i += n;
  }
  return true;
}

/// Byte offset of the first malformed sequence, or npos.
inline std::size_t first_invalid(std::string_view s) {
  char32_t cp;
  for (std::size_t i = 0; i < s.size();) {
    const std::size_t n = detail::decode_one(s, i, cp);
    if (n == 0) return i;
    i += n;
  }
  return std::string_view::npos;
}

/// Lenient decode: malformed bytes become U+FFFD.
inline std::u32string decode(std::string_view s) {
  std::u32string out;
  out.reserve(s.size());
  char32_t cp;
  for (std::size_t i = 0; i < s.size();) {
    const std::size_t n = detail::decode_one(s, i, cp);
    if (n == 0) {
      out.push_back(kReplacement);
      ++i;
    } else {
      out.push_back(cp);
      i += n;
    }
  }
  return out;
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

inline std::string encode(std::u32string_view cps) {
  std::string out;
  out.reserve(cps.size());
  for (char32_t cp : cps) append(out, cp);
  return out;
}

inline std::size_t length(std::string_view s) {
  std::size_t n = 0;
  for (char c : s) n += (static_cast<unsigned char>(c) & 0xC0) != 0x80;
  return n;
}

// ---------------------------------------------------------------------------
// Character classes

inline bool is_upper(char32_t c) {
  if (c < 0x80) return c >= 'A' && c <= 'Z';
  if (c >= 0xC0 && c <= 0xDE) return c != 0xD7;
  if (c >= 0x100 && c <= 0x137) return (c & 1) == 0;
  if (c >= 0x139 && c <= 0x148) return (c & 1) == 1;
  if (c >= 0x14A && c <= 0x177) return (c & 1) == 0;
  if (c == 0x178) return true;
  if (c >= 0x179 && c <= 0x17E) return (c & 1) == 1;
  if (c >= 0x391 && c <= 0x3A9) return c != 0x3A2;
  if (c >= 0x400 && c <= 0x42F) return true;
  return false;
}

inline char32_t to_lower(char32_t c) {
  if (c < 0x80) return (c >= 'A' && c <= 'Z') ? c + 32 : c;
  if (c >= 0xC0 && c <= 0xDE && c != 0xD7) return c + 0x20;
  if (c == 0x130) return U'i';  // Turkish dotted capital I
  if (c == 0x178) return 0xFF;
  if (c >= 0x100 && c <= 0x17E && is_upper(c)) return c + 1;
  if (c >= 0x391 && c <= 0x3A9 && c != 0x3A2) return c + 0x20;
  if (c >= 0x410 && c <= 0x42F) return c + 0x20;
  if (c >= 0x400 && c <= 0x40F) return c + 0x50;
  return c;
}

inline char32_t to_upper(char32_t c) {
  if (c < 0x80) return (c >= 'a' && c <= 'z') ? c - 32 : c;
  if (c >= 0xE0 && c <= 0xFE && c != 0xF7) return c - 0x20;
  if (c == 0xFF) return 0x178;
  if (c == 0x131) return U'I';  // Turkish dotless i
  if (c >= 0x101 && c <= 0x17E && !is_upper(c) && c != 0x138 && c != 0x149) {
    if (is_upper(c - 1)) return c - 1;
  }
  if (c >= 0x3B1 && c <= 0x3C9 && c != 0x3C2) return c - 0x20;
  if (c >= 0x430 && c <= 0x44F) return c - 0x20;
  if (c >= 0x450 && c <= 0x45F) return c - 0x50;
  return c;
}

inline bool is_lower(char32_t c) { return to_upper(c) != c; }

inline bool is_digit(char32_t c) { return c >= '0' && c <= '9'; }

inline bool is_space(char32_t c) {
  switch (c) {
    case ' ':
    case '\t':
    case '\n':
    case '\r':
    case '\v':
    case '\f':
    case 0x85:
    case 0xA0:
    case 0x1680:
    case 0x2028:
    case 0x2029:
    case 0x202F:
    case 0x205F:
    case 0x3000:
    case 0xFEFF:
      return true;
    default:
      return c >= 0x2000 && c <= 0x200A;
  }
}

inline bool is_letter(char32_t c) {
  if (c < 0x80) return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z');
  if (c == 0xAA || c == 0xB5 || c == 0xBA) return true;
  if (c >= 0xC0 && c <= 0x24F) return c != 0xD7 && c != 0xF7;
  if (c >= 0x250 && c <= 0x2AF) return true;    // IPA
  if (c >= 0x370 && c <= 0x3FF) return c != 0x37E && c != 0x387;
  if (c >= 0x400 && c <= 0x52F) return true;    // Cyrillic
  if (c >= 0x591 && c <= 0x5F4) return c < 0x5BE || c > 0x5C6;  // Hebrew
  if (c >= 0x1E00 && c <= 0x1EFF) return true;  // Latin Extended Additional
  if (c >= 0x3040 && c <= 0x9FFF) return true;  // CJK-ish, treated as letters
  if (c >= 0xAC00 && c <= 0xD7AF) return true;
  if (c >= 0x300 && c <= 0x36F) return true;    // combining marks stay word-internal
  return false;
}

inline bool is_alnum(char32_t c) { return is_letter(c) || is_digit(c); }

/// Anything that is not a letter, digit or whitespace counts as punctuation.
inline bool is_punct(char32_t c) { return !is_alnum(c) && !is_space(c); }

/// Strips acute/grave/circumflex/diaeresis/tilde from vowels. Leaves ñ alone.
inline char32_t fold_accent(char32_t c) {
  switch (c) {
    case 0xE1: case 0xE0: case 0xE2: case 0xE4: case 0xE3: return U'a';
    case 0xE9: case 0xE8: case 0xEA: case 0xEB: return U'e';
    case 0xED: case 0xEC: case 0xEE: case 0xEF: return U'i';
    case 0xF3: case 0xF2: case 0xF4: case 0xF6: case 0xF5: return U'o';
    case 0xFA: case 0xF9: case 0xFB: case 0xFC: return U'u';
    case 0xC1: case 0xC0: case 0xC2: case 0xC4: case 0xC3: return U'A';
    case 0xC9: case 0xC8: case 0xCA: case 0xCB: return U'E';
    case 0xCD: case 0xCC: case 0xCE: case 0xCF: return U'I';
    case 0xD3: case 0xD2: case 0xD4: case 0xD6: case 0xD5: return U'O';
    case 0xDA: case 0xD9: case 0xDB: case 0xDC: return U'U';
    default: return c;
  }
}

// ---------------------------------------------------------------------------
// String-level helpers

inline std::u32string lower(std::u32string s) {
  for (char32_t& c : s) c = to_lower(c);
  return s;
}

inline std::string lower(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char32_t c : decode(s)) append(out, to_lower(c));
  return out;
}

inline std::string upper(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char32_t c : decode(s)) append(out, to_upper(c));
  return out;
}

inline std::string fold_accents(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char32_t c : decode(s)) append(out, fold_accent(c));
  return out;
}

/// Lowercase + accent fold; the lookup key used by dictionaries.
inline std::string fold_key(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char32_t c : decode(s)) append(out, fold_accent(to_lower(c)));
  return out;
}

inline bool starts_upper(std::string_view s) {
  if (s.empty()) return false;
  char32_t cp;
  return detail::decode_one(s, 0, cp) > 0 && is_upper(cp);
}

inline std::string capitalize(std::string_view s) {
  if (s.empty()) return std::string(s);
  char32_t cp;
  const std::size_t n = detail::decode_one(s, 0, cp);
  if (n == 0) return std::string(s);
  std::string out;
  append(out, to_upper(cp));
  out.append(s.substr(n));
  return out;
}

inline std::string decapitalize(std::string_view s) {
  if (s.empty()) return std::string(s);
  char32_t cp;
  const std::size_t n = detail::decode_one(s, 0, cp);
  if (n == 0) return std::string(s);
  std::string out;
  append(out, to_lower(cp));
  out.append(s.substr(n));
  return out;
}

/// True when every letter is uppercase and there are at least two letters.
inline bool all_caps(std::string_view s) {
  std::size_t letters = 0;
  for (char32_t c : decode(s)) {
    if (!is_letter(c)) continue;
    if (!is_upper(c)) return false;
    ++letters;
  }
  return letters >= 2;
}

inline bool all_punct(std::string_view s) {
  if (s.empty()) return false;
  for (char32_t c : decode(s))
    if (!is_punct(c)) return false;
  return true;
}

inline bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

inline bool starts_with(std::string_view s, std::string_view prefix) {
  return s.size() >= prefix.size() && s.substr(0, prefix.size()) == prefix;
}

}  // namespace ladino::utf8
