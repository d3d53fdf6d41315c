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

// Spanish -> Judeo-Spanish word dictionary and the multi-word phrase
// correction table applied after word-level transfer.

#pragma once

#include <algorithm>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ladino/error.hpp"
#include "ladino/text_io.hpp"
#include "ladino/utf8.hpp"

namespace ladino {

/// Collects non-fatal loader diagnostics (duplicate keys and the like).
struct Diagnostics {
  std::vector<std::string> warnings;
};

class Lexicon {
 public:
  Lexicon() = default;

  /// Inserts or replaces; returns true when an existing key was replaced.
  bool insert(std::string_view spanish, std::string ladino) {
    auto [it, inserted] = map_.insert_or_assign(utf8::fold_key(spanish), std::move(ladino));
    return !inserted;
  }

  /// Exact match on the lowercase, accent-folded key.
  std::optional<std::string_view> lookup(std::string_view form) const {
    const auto it = map_.find(utf8::fold_key(form));
    if (it == map_.end()) return std::nullopt;
    return std::string_view(it->second);
  }

  bool contains(std::string_view form) const { return map_.count(utf8::fold_key(form)) > 0; }

  std::size_t entry_count() const noexcept { return map_.size(); }
  bool empty() const noexcept { return map_.empty(); }

  /// Entries ordered by key.
  std::vector<std::pair<std::string, std::string>> entries() const {
    std::vector<std::pair<std::string, std::string>> out(map_.begin(), map_.end());
    std::sort(out.begin(), out.end());
    return out;
  }

  bool operator==(const Lexicon& other) const { return map_ == other.map_; }

 private:
  std::unordered_map<std::string, std::string> map_;
};

namespace detail {

inline bool has_whitespace(std::string_view s) {
  for (char32_t c : utf8::decode(s))
    if (utf8::is_space(c)) return true;
  return false;
}

inline std::string normalize_spaces(std::string_view s) {
  return text::join(text::split_words(s), " ");
}

}  // namespace detail

/// Parses `spanish<TAB>ladino` lines. The Ladino side may hold several
/// space-separated words. Later duplicates win with a warning.
inline Lexicon parse_lexicon(std::string_view content, const std::string& source,
                             Diagnostics* diag = nullptr) {
  if (const auto bad = utf8::first_invalid(content); bad != std::string_view::npos) {
    const auto line = 1 + std::count(content.begin(), content.begin() + bad, '\n');
    throw ParseError(source, static_cast<std::size_t>(line), "invalid UTF-8");
  }
  Lexicon lex;
  for (const auto& row : text::parse_tsv(content, source)) {
    if (row.fields.size() != 2)
      throw ParseError(source, row.line,
                       row.fields.size() < 2 ? "missing tab separator" : "more than two fields");
    const std::string key(text::trim(row.fields[0]));
    const std::string value = detail::normalize_spaces(row.fields[1]);
    if (key.empty()) throw ParseError(source, row.line, "empty Spanish form");
    if (value.empty()) throw ParseError(source, row.line, "empty Ladino form");
    if (detail::has_whitespace(key))
      throw ParseError(source, row.line, "Spanish form must be a single token");
    if (lex.insert(key, value) && diag) {
      diag->warnings.push_back(source + ":" + std::to_string(row.line) + ": duplicate entry '" +
                               key + "' overrides an earlier one");
    }
  }
  return lex;
}

inline Lexicon load_lexicon(std::istream& in, const std::string& source = "<stream>",
                            Diagnostics* diag = nullptr) {
  return parse_lexicon(text::read_stream(in), source, diag);
}

inline Lexicon load_lexicon(const std::filesystem::path& path, Diagnostics* diag = nullptr) {
  return parse_lexicon(text::read_file(path), path.string(), diag);
}

inline std::string serialize(const Lexicon& lex) {
  std::string out;
  for (const auto& [k, v] : lex.entries()) out += k + '\t' + v + '\n';
  return out;
}

// ---------------------------------------------------------------------------
// Phrase correction

struct PhraseRule {
  std::vector<std::string> pattern;      // lowercase, accent-folded, >= 2 tokens
  std::vector<std::string> replacement;  // >= 1 token
};

class PhraseRules {
 public:
  PhraseRules() = default;

  /// Rules are kept sorted longest pattern first; ties keep insertion order.
  explicit PhraseRules(std::vector<PhraseRule> rules) : rules_(std::move(rules)) {
    for (auto& r : rules_) {
      if (r.pattern.size() < 2) throw Error("phrase pattern needs at least two tokens");
      if (r.replacement.empty()) throw Error("phrase replacement is empty");
      for (auto& t : r.pattern) t = utf8::fold_key(t);
    }
    std::stable_sort(rules_.begin(), rules_.end(), [](const PhraseRule& a, const PhraseRule& b) {
      return a.pattern.size() > b.pattern.size();
    });
  }

  const std::vector<PhraseRule>& rules() const noexcept { return rules_; }
  std::size_t size() const noexcept { return rules_.size(); }
  bool empty() const noexcept { return rules_.empty(); }

 private:
  std::vector<PhraseRule> rules_;
};

inline PhraseRules parse_phrase_rules(std::string_view content, const std::string& source) {
  std::vector<PhraseRule> rules;
  for (const auto& row : text::parse_tsv(content, source)) {
    if (row.fields.size() != 2)
      throw ParseError(source, row.line, "expected pattern<TAB>replacement");
    PhraseRule rule{text::split_words(row.fields[0]), text::split_words(row.fields[1])};
    if (rule.pattern.size() < 2)
      throw ParseError(source, row.line, "pattern must contain at least two tokens");
    if (rule.replacement.empty()) throw ParseError(source, row.line, "empty replacement");
    rules.push_back(std::move(rule));
  }
  return PhraseRules(std::move(rules));
}

inline PhraseRules load_phrase_rules(const std::filesystem::path& path) {
  return parse_phrase_rules(text::read_file(path), path.string());
}

struct PhraseMatch {
  std::size_t start = 0;
  std::size_t length = 0;
  const PhraseRule* rule = nullptr;
};

/// Non-overlapping matches, scanning left to right; at each position the
/// longest pattern wins. Comparison is case- and accent-insensitive.
inline std::vector<PhraseMatch> find_phrase_matches(const std::vector<std::string>& tokens,
                                                    const PhraseRules& rules) {
  std::vector<PhraseMatch> matches;
  if (rules.empty()) return matches;
  std::vector<std::string> keys;
  keys.reserve(tokens.size());
  for (const auto& t : tokens) keys.push_back(utf8::fold_key(t));
  std::size_t i = 0;
  while (i < keys.size()) {
    const PhraseRule* hit = nullptr;
    for (const auto& rule : rules.rules()) {
      const std::size_t n = rule.pattern.size();
      if (i + n <= keys.size() && std::equal(rule.pattern.begin(), rule.pattern.end(), keys.begin() + i)) {
        hit = &rule;
        break;
      }
    }
    if (hit) {
      matches.push_back({i, hit->pattern.size(), hit});
      i += hit->pattern.size();
    } else {
      ++i;
    }
  }
  return matches;
}

/// Replacement tokens for a match. When the first matched token starts with
/// an uppercase letter (sentence-initial in practice) the replacement is
/// capitalized to match.
inline std::vector<std::string> phrase_replacement(const PhraseMatch& m,
                                                   const std::vector<std::string>& tokens) {
  std::vector<std::string> out = m.rule->replacement;
  if (utf8::starts_upper(tokens[m.start])) out.front() = utf8::capitalize(out.front());
  return out;
}

inline std::vector<std::string> apply_phrase_rules(const std::vector<std::string>& tokens,
                                                   const PhraseRules& rules) {
  const auto matches = find_phrase_matches(tokens, rules);
  if (matches.empty()) return tokens;
  std::vector<std::string> out;
  out.reserve(tokens.size());
  std::size_t i = 0;
  for (const auto& m : matches) {
    out.insert(out.end(), tokens.begin() + i, tokens.begin() + m.start);
    const auto repl = phrase_replacement(m, tokens);
    out.insert(out.end(), repl.begin(), repl.end());
    i = m.start + m.length;
  }
  out.insert(out.end(), tokens.begin() + i, tokens.end());
  return out;
}

}  // namespace ladino
