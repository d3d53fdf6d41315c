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

// Shallow Spanish analyzer: coarse POS, lemma and verb features from a
// closed-class word list, the bilingual dictionary and a verb-suffix table.
//
// Precedence, highest first:
//   punctuation / numerals
//   closed-class list (also carries irregular verb forms)
//   dictionary surface hit (VERB only for infinitives and participles)
//   verb suffix that resolves to a known lemma
//   NOUN with plural -s/-es stripped

#pragma once

#include <algorithm>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "ladino/error.hpp"
#include "ladino/features.hpp"
#include "ladino/lexicon.hpp"
#include "ladino/text_io.hpp"
#include "ladino/utf8.hpp"

namespace ladino {

struct AnalyzedToken {
  std::string surface;
  std::string normalized;  // lowercase, accents kept
  Pos pos = Pos::kOther;
  std::string lemma;
  std::optional<VerbFeatures> features;
  // Surface of the "haber" auxiliary when this token is a fused perfect.
  std::optional<std::string> auxiliary;

  bool plural() const { return (pos == Pos::kNoun || pos == Pos::kAdj) && lemma != normalized; }
  bool operator==(const AnalyzedToken&) const = default;
};

struct ClosedClassEntry {
  Pos pos = Pos::kOther;
  std::string lemma;  // empty means "same as the form"
  std::optional<VerbFeatures> features;
};

struct VerbSuffix {
  std::string suffix;
  VerbClass verb_class = VerbClass::kAr;
  VerbFeatures features;
};

class AnalyzerData {
 public:
  AnalyzerData() = default;
  AnalyzerData(std::unordered_map<std::string, ClosedClassEntry> closed,
               std::vector<VerbSuffix> suffixes)
      : closed_(std::move(closed)), suffixes_(std::move(suffixes)) {
    for (const auto& [form, entry] : closed_) {
      folded_.try_emplace(utf8::fold_key(form), form);
      if (entry.pos == Pos::kVerb && !entry.lemma.empty()) known_verbs_.insert(entry.lemma);
    }
    std::stable_sort(suffixes_.begin(), suffixes_.end(), [](const VerbSuffix& a, const VerbSuffix& b) {
      return a.suffix.size() > b.suffix.size();
    });
  }

  /// Exact lowercase match first, accent-folded match second.
  const ClosedClassEntry* closed_class(std::string_view normalized) const {
    if (auto it = closed_.find(std::string(normalized)); it != closed_.end()) return &it->second;
    if (auto it = folded_.find(utf8::fold_key(normalized)); it != folded_.end())
      return &closed_.at(it->second);
    return nullptr;
  }

  const std::vector<VerbSuffix>& suffixes() const noexcept { return suffixes_; }
  bool known_verb(const std::string& folded_lemma) const {
    return known_verbs_.count(folded_lemma) > 0;
  }
  std::size_t closed_class_size() const noexcept { return closed_.size(); }

 private:
  std::unordered_map<std::string, ClosedClassEntry> closed_;
  std::unordered_map<std::string, std::string> folded_;
  std::vector<VerbSuffix> suffixes_;  // longest first
  std::unordered_set<std::string> known_verbs_;
};

namespace detail {

struct FeatureFields {
  std::optional<std::string> lemma;
  std::optional<VerbClass> verb_class;
  std::optional<VerbFeatures> features;
};

// Parses "lemma=haber;tense=PRESENT;person=P2;number=SG".
inline FeatureFields parse_feature_fields(std::string_view spec, const std::string& source,
                                          std::size_t line) {
  FeatureFields out;
  std::optional<Tense> tense;
  std::optional<Person> person;
  std::optional<Number> number;
  for (const auto& part : text::split(spec, ';')) {
    const auto kv = text::trim(part);
    if (kv.empty()) continue;
    const auto eq = kv.find('=');
    if (eq == std::string_view::npos) throw ParseError(source, line, "feature without '='");
    const auto key = kv.substr(0, eq);
    const auto value = kv.substr(eq + 1);
    if (key == "lemma") {
      out.lemma = utf8::fold_key(value);
    } else if (key == "class") {
      out.verb_class = parse_verb_class(value);
      if (!out.verb_class) throw ParseError(source, line, "unknown verb class");
    } else if (key == "tense") {
      tense = parse_tense(value);
      if (!tense) throw ParseError(source, line, "unknown tense '" + std::string(value) + "'");
    } else if (key == "person") {
      person = parse_person(value);
      if (!person) throw ParseError(source, line, "unknown person");
    } else if (key == "number") {
      number = parse_number(value);
      if (!number) throw ParseError(source, line, "unknown number");
    } else {
      throw ParseError(source, line, "unknown feature '" + std::string(key) + "'");
    }
  }
  if (tense) {
    if (is_finite(*tense) != (person.has_value() && number.has_value()))
      throw ParseError(source, line, "finite tenses need person and number; non-finite take none");
    out.features = VerbFeatures{*tense, person, number};
  } else if (person || number) {
    throw ParseError(source, line, "person/number given without tense");
  }
  return out;
}

}  // namespace detail

/// `form<TAB>POS[<TAB>features]`
inline std::unordered_map<std::string, ClosedClassEntry> parse_closed_class(
    std::string_view content, const std::string& source) {
  std::unordered_map<std::string, ClosedClassEntry> out;
  for (const auto& row : text::parse_tsv(content, source)) {
    if (row.fields.size() < 2 || row.fields.size() > 3)
      throw ParseError(source, row.line, "expected form<TAB>pos[<TAB>features]");
    ClosedClassEntry entry;
    const auto pos = parse_pos(text::trim(row.fields[1]));
    if (!pos) throw ParseError(source, row.line, "unknown POS '" + row.fields[1] + "'");
    entry.pos = *pos;
    if (row.fields.size() == 3) {
      auto f = detail::parse_feature_fields(row.fields[2], source, row.line);
      if (f.lemma) entry.lemma = *f.lemma;
      entry.features = f.features;
    }
    if (entry.pos == Pos::kVerb && (!entry.features || entry.lemma.empty()))
      throw ParseError(source, row.line, "verb entries need lemma and tense");
    out[utf8::lower(text::trim(row.fields[0]))] = std::move(entry);
  }
  return out;
}

/// `suffix<TAB>VERB<TAB>class=..;tense=..[;person=..;number=..]`
inline std::vector<VerbSuffix> parse_verb_suffixes(std::string_view content,
                                                   const std::string& source) {
  std::vector<VerbSuffix> out;
  for (const auto& row : text::parse_tsv(content, source)) {
    if (row.fields.size() != 3 || text::trim(row.fields[1]) != "VERB")
      throw ParseError(source, row.line, "expected suffix<TAB>VERB<TAB>features");
    auto f = detail::parse_feature_fields(row.fields[2], source, row.line);
    if (!f.verb_class || !f.features)
      throw ParseError(source, row.line, "suffix entries need class and tense");
    const std::string suffix = utf8::lower(text::trim(row.fields[0]));
    if (suffix.empty()) throw ParseError(source, row.line, "empty suffix");
    out.push_back({suffix, *f.verb_class, *f.features});
  }
  return out;
}

inline AnalyzerData load_analyzer_data(const std::filesystem::path& closed_class_path,
                                       const std::filesystem::path& suffix_path) {
  return AnalyzerData(
      parse_closed_class(text::read_file(closed_class_path), closed_class_path.string()),
      parse_verb_suffixes(text::read_file(suffix_path), suffix_path.string()));
}

// ---------------------------------------------------------------------------

struct VerbReading {
  std::string lemma;  // folded Spanish infinitive
  VerbFeatures features;
};

/// Tries every suffix, longest first, on the accented form and then on the
/// accent-folded form. Accented endings (-é, -ó) carry tense, so they get the
/// first chance.
inline std::optional<VerbReading> resolve_verb(std::string_view normalized, const Lexicon& lexicon,
                                               const AnalyzerData& data) {
  const std::string forms[2] = {std::string(normalized), utf8::fold_accents(normalized)};
  for (int k = 0; k < 2; ++k) {
    if (k == 1 && forms[1] == forms[0]) break;
    const std::string& form = forms[k];
    for (const auto& s : data.suffixes()) {
      if (form.size() <= s.suffix.size() || !utf8::ends_with(form, s.suffix)) continue;
      const std::string lemma = utf8::fold_key(form.substr(0, form.size() - s.suffix.size())) +
                                std::string(infinitive_ending(s.verb_class));
      if (lexicon.contains(lemma) || data.known_verb(lemma)) return VerbReading{lemma, s.features};
    }
  }
  return std::nullopt;
}

/// Strips a plural -s (after a vowel) or -es (after a consonant).
inline std::string strip_plural(const std::string& normalized) {
  const std::u32string s = utf8::decode(normalized);
  const auto vowel = [](char32_t c) {
    c = utf8::fold_accent(c);
    return c == U'a' || c == U'e' || c == U'i' || c == U'o' || c == U'u';
  };
  const std::size_t n = s.size();
  if (n > 3 && s[n - 1] == U's' && s[n - 2] == U'e' && !vowel(s[n - 3]) && utf8::is_letter(s[n - 3]))
    return utf8::encode(s.substr(0, n - 2));
  if (n > 2 && s[n - 1] == U's' && vowel(s[n - 2])) return utf8::encode(s.substr(0, n - 1));
  return normalized;
}

inline bool looks_numeric(std::string_view s) {
  bool digit = false;
  for (char32_t c : utf8::decode(s)) {
    if (utf8::is_digit(c)) {
      digit = true;
    } else if (c != U'.' && c != U',') {
      return false;
    }
  }
  return digit;
}

inline AnalyzedToken analyze_token(const std::string& surface, const Lexicon& lexicon,
                                   const AnalyzerData& data) {
  AnalyzedToken tok;
  tok.surface = surface;
  tok.normalized = utf8::lower(surface);
  if (utf8::all_punct(surface)) {
    tok.pos = Pos::kPunct;
    tok.lemma = surface;
    return tok;
  }
  if (looks_numeric(surface)) {
    tok.pos = Pos::kNum;
    tok.lemma = tok.normalized;
    return tok;
  }
  if (const auto* cc = data.closed_class(tok.normalized)) {
    tok.pos = cc->pos;
    tok.lemma = cc->lemma.empty() ? tok.normalized : cc->lemma;
    tok.features = cc->features;
    return tok;
  }
  if (lexicon.contains(tok.normalized)) {
    if (auto v = resolve_verb(tok.normalized, lexicon, data);
        v && (v->features.tense == Tense::kInfinitive || v->features.tense == Tense::kParticiple)) {
      tok.pos = Pos::kVerb;
      tok.lemma = v->lemma;
      tok.features = v->features;
      return tok;
    }
    tok.pos = Pos::kNoun;
    const std::string singular = strip_plural(tok.normalized);
    tok.lemma = singular != tok.normalized && lexicon.contains(singular) ? singular : tok.normalized;
    return tok;
  }
  if (auto v = resolve_verb(tok.normalized, lexicon, data)) {
    tok.pos = Pos::kVerb;
    tok.lemma = v->lemma;
    tok.features = v->features;
    return tok;
  }
  tok.pos = Pos::kNoun;
  tok.lemma = strip_plural(tok.normalized);
  return tok;
}

inline std::vector<AnalyzedToken> analyze(const std::vector<std::string>& tokens,
                                          const Lexicon& lexicon, const AnalyzerData& data) {
  std::vector<AnalyzedToken> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(analyze_token(t, lexicon, data));
  return out;
}

namespace detail {

inline bool is_perfect_auxiliary(const AnalyzedToken& t) {
  static const std::unordered_set<std::string> forms = {
      "he", "has", "ha", "hemos", "hab\xC3\xA9is", "habeis", "han"};
  return t.pos == Pos::kVerb && t.lemma == "haber" && t.features &&
         t.features->tense == Tense::kPresent && t.features->person && !t.auxiliary &&
         forms.count(t.normalized) > 0;
}

}  // namespace detail

/// Fuses "haber" (present) + participle into one preterite token carrying
/// the participle's lemma and the auxiliary's person and number.
inline std::vector<AnalyzedToken> detect_present_perfect(const std::vector<AnalyzedToken>& tokens) {
  std::vector<AnalyzedToken> out;
  out.reserve(tokens.size());
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const AnalyzedToken& t = tokens[i];
    if (i + 1 < tokens.size() && detail::is_perfect_auxiliary(t)) {
      const AnalyzedToken& next = tokens[i + 1];
      if (next.pos == Pos::kVerb && next.features && next.features->tense == Tense::kParticiple) {
        AnalyzedToken fused = next;
        fused.features = VerbFeatures{Tense::kPreterite, t.features->person, t.features->number};
        fused.auxiliary = t.surface;
        out.push_back(std::move(fused));
        ++i;
        continue;
      }
    }
    out.push_back(t);
  }
  return out;
}

}  // namespace ladino
