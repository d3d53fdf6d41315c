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

// Spanish to Judeo-Spanish respelling. A rule set is an ordered list of
// context-sensitive rewrites over lowercase codepoints. Each rule is run
// left-to-right over the word, repeatedly until it no longer fires, before
// the next rule starts.

#pragma once

#include <algorithm>
#include <iterator>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ladino/error.hpp"
#include "ladino/text_io.hpp"
#include "ladino/utf8.hpp"

namespace ladino {

enum class RuleContext {
  kAnywhere,
  kWordInitial,
  kWordFinal,
  kBeforeBackVowel,   // before a, o, u
  kBeforeFrontVowel,  // before e, i
  kIntervocalic,
  kStandaloneWord,
};

inline std::string_view to_string(RuleContext c) {
  switch (c) {
    case RuleContext::kAnywhere: return "";
    case RuleContext::kWordInitial: return "word-initial";
    case RuleContext::kWordFinal: return "word-final";
    case RuleContext::kBeforeBackVowel: return "before-vowel:AOU";
    case RuleContext::kBeforeFrontVowel: return "before-vowel:EI";
    case RuleContext::kIntervocalic: return "intervocalic";
    case RuleContext::kStandaloneWord: return "standalone-word";
  }
  return "";
}

inline std::optional<RuleContext> parse_rule_context(std::string_view s) {
  for (auto c : {RuleContext::kAnywhere, RuleContext::kWordInitial, RuleContext::kWordFinal,
                 RuleContext::kBeforeBackVowel, RuleContext::kBeforeFrontVowel,
                 RuleContext::kIntervocalic, RuleContext::kStandaloneWord}) {
    if (to_string(c) == s) return c;
  }
  return std::nullopt;
}

struct OrthoRule {
  std::u32string pattern;
  std::u32string replacement;
  RuleContext context = RuleContext::kAnywhere;

  bool operator==(const OrthoRule&) const = default;
};

class OrthoRuleSet {
 public:
  OrthoRuleSet() = default;
  explicit OrthoRuleSet(std::vector<OrthoRule> rules) : rules_(std::move(rules)) {}

  const std::vector<OrthoRule>& rules() const noexcept { return rules_; }
  std::size_t size() const noexcept { return rules_.size(); }

  /// Copy of this set with every rule matching (pattern, context) removed.
  OrthoRuleSet without(std::string_view pattern, RuleContext context) const {
    const std::u32string p = utf8::decode(pattern);
    std::vector<OrthoRule> kept;
    std::copy_if(rules_.begin(), rules_.end(), std::back_inserter(kept),
                 [&](const OrthoRule& r) { return !(r.pattern == p && r.context == context); });
    return OrthoRuleSet(std::move(kept));
  }

  bool operator==(const OrthoRuleSet&) const = default;

 private:
  std::vector<OrthoRule> rules_;
};

inline OrthoRuleSet parse_ortho_rules(std::string_view content, const std::string& source) {
  std::vector<OrthoRule> rules;
  for (const auto& row : text::parse_tsv(content, source)) {
    if (row.fields.size() < 2 || row.fields.size() > 3)
      throw ParseError(source, row.line, "expected pattern<TAB>replacement[<TAB>context]");
    OrthoRule rule;
    rule.pattern = utf8::lower(utf8::decode(row.fields[0]));
    rule.replacement = utf8::lower(utf8::decode(row.fields[1]));
    if (rule.pattern.empty()) throw ParseError(source, row.line, "empty pattern");
    if (row.fields.size() == 3) {
      auto ctx = parse_rule_context(text::trim(row.fields[2]));
      if (!ctx) throw ParseError(source, row.line, "unknown context flag '" + row.fields[2] + "'");
      rule.context = *ctx;
    }
    rules.push_back(std::move(rule));
  }
  return OrthoRuleSet(std::move(rules));
}

inline OrthoRuleSet load_ortho_rules(const std::filesystem::path& path) {
  return parse_ortho_rules(text::read_file(path), path.string());
}

inline std::string serialize(const OrthoRuleSet& set) {
  std::string out;
  for (const auto& r : set.rules()) {
    out += utf8::encode(r.pattern) + '\t' + utf8::encode(r.replacement);
    if (r.context != RuleContext::kAnywhere) out += '\t' + std::string(to_string(r.context));
    out += '\n';
  }
  return out;
}

/// The shipped rule inventory; data/ortho_rules.tsv carries the same list.
inline constexpr std::string_view kDefaultOrthoRules =
    "# accents\n"
    "\xC3\xA1\ta\n"       // á
    "\xC3\xA9\te\n"       // é
    "\xC3\xAD\ti\n"       // í
    "\xC3\xB3\to\n"       // ó
    "\xC3\xBA\tu\n"       // ú
    "\xC3\xBC\tu\n"       // ü
    "h\t\tword-initial\n"
    "qu\tk\n"
    "q\tk\n"
    "c\tk\tbefore-vowel:AOU\n"
    "c\ts\tbefore-vowel:EI\n"
    "\xC3\xB1\tny\n"      // ñ
    "ll\ty\n"
    "y\ti\tstandalone-word\n"
    "gue\tge\n"
    "gui\tgi\n"
    "b\tv\tintervocalic\n";

inline const OrthoRuleSet& default_rules() {
  static const OrthoRuleSet rules = parse_ortho_rules(kDefaultOrthoRules, "<default ortho rules>");
  return rules;
}

namespace detail {

inline bool is_vowel(char32_t c) {
  switch (utf8::fold_accent(c)) {
    case U'a': case U'e': case U'i': case U'o': case U'u': return true;
    default: return false;
  }
}

inline bool context_holds(const std::u32string& s, std::size_t at, std::size_t len, RuleContext ctx) {
  const std::size_t end = at + len;
  const char32_t next = end < s.size() ? utf8::fold_accent(s[end]) : 0;
  switch (ctx) {
    case RuleContext::kAnywhere: return true;
    case RuleContext::kWordInitial: return at == 0;
    case RuleContext::kWordFinal: return end == s.size();
    case RuleContext::kBeforeBackVowel: return next == U'a' || next == U'o' || next == U'u';
    case RuleContext::kBeforeFrontVowel: return next == U'e' || next == U'i';
    case RuleContext::kIntervocalic:
      return at > 0 && is_vowel(s[at - 1]) && end < s.size() && is_vowel(s[end]);
    case RuleContext::kStandaloneWord: return at == 0 && end == s.size();
  }
  return false;
}

// One left-to-right pass; returns whether anything changed.
inline bool apply_pass(std::u32string& s, const OrthoRule& rule) {
  bool changed = false;
  const std::size_t plen = rule.pattern.size();
  std::size_t i = 0;
  while (i + plen <= s.size()) {
    if (s.compare(i, plen, rule.pattern) == 0 && context_holds(s, i, plen, rule.context) &&
        s.size() - plen + rule.replacement.size() > 0) {
      s.replace(i, plen, rule.replacement);
      i += rule.replacement.size();
      changed = true;
    } else {
      ++i;
    }
  }
  return changed;
}

inline constexpr int kMaxPasses = 8;

}  // namespace detail

/// Lowercase codepoint-level rewrite with no case handling.
inline std::u32string respell_lower(std::u32string s, const OrthoRuleSet& rules) {
  for (const auto& rule : rules.rules()) {
    for (int pass = 0; pass < detail::kMaxPasses && detail::apply_pass(s, rule); ++pass) {
    }
  }
  return s;
}

/// Respells one word. Rules see the lowercased word; afterwards an all-caps
/// word is uppercased again and otherwise the first letter's case is restored.
inline std::string respell(std::string_view word, const OrthoRuleSet& rules) {
  if (word.empty()) return {};
  const std::u32string original = utf8::decode(word);
  const bool caps = utf8::all_caps(word);
  const bool first_upper = utf8::is_upper(original.front());
  std::u32string s = respell_lower(utf8::lower(original), rules);
  if (caps) {
    for (char32_t& c : s) c = utf8::to_upper(c);
  } else if (first_upper && !s.empty()) {
    s.front() = utf8::to_upper(s.front());
  }
  return utf8::encode(s);
}

inline std::string respell(std::string_view word) { return respell(word, default_rules()); }

/// Reason a word is not in Ladino orthography, or nullopt when it is.
/// Checks the graphemes the default rules eliminate.
inline std::optional<std::string> orthography_violation(std::string_view word) {
  const std::u32string s = utf8::lower(utf8::decode(word));
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char32_t c = s[i];
    const char32_t next = i + 1 < s.size() ? s[i + 1] : 0;
    if (c == U'q') return "contains q";
    if (c == 0xF1) return "contains \xC3\xB1";
    if (c == U'l' && next == U'l') return "contains ll";
    if (c == U'c' && (next == U'a' || next == U'o' || next == U'u')) return "c before a/o/u";
    if (c == 0xE1 || c == 0xE9 || c == 0xED || c == 0xF3 || c == 0xFA || c == 0xFC)
      return "accented vowel";
  }
  if (s.size() > 1 && s.front() == U'h') return "word-initial h";
  return std::nullopt;
}

inline bool is_ladino_spelling(std::string_view word) { return !orthography_violation(word); }

}  // namespace ladino
