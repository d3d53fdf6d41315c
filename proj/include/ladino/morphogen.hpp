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

// Ladino verb generation from paradigm tables. A regular form is the lemma
// stem plus the table ending for (class, tense, person, number); irregular
// overrides replace the whole form. Output always goes through the
// orthography rules, which also take care of stem-final spelling changes.

#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "ladino/error.hpp"
#include "ladino/features.hpp"
#include "ladino/orthography.hpp"
#include "ladino/text_io.hpp"
#include "ladino/utf8.hpp"

namespace ladino {

class ConjugationTable {
 public:
  void set_ending(VerbClass c, const VerbFeatures& f, std::string ending) {
    endings_[{static_cast<int>(c), key(f)}] = std::move(ending);
  }

  void set_irregular(std::string lemma, const VerbFeatures& f, std::string form) {
    irregulars_[{std::move(lemma), key(f)}] = std::move(form);
  }

  std::optional<std::string_view> ending(VerbClass c, const VerbFeatures& f) const {
    const auto it = endings_.find({static_cast<int>(c), key(f)});
    if (it == endings_.end()) return std::nullopt;
    return std::string_view(it->second);
  }

  std::optional<std::string_view> irregular(const std::string& lemma, const VerbFeatures& f) const {
    const auto it = irregulars_.find({lemma, key(f)});
    if (it == irregulars_.end()) return std::nullopt;
    return std::string_view(it->second);
  }

  std::size_t ending_count() const noexcept { return endings_.size(); }
  std::size_t irregular_count() const noexcept { return irregulars_.size(); }

  /// Every cell the regular grid must define: the four finite tenses for
  /// each class, person and number, plus participle and gerund per class.
  static std::vector<std::pair<VerbClass, VerbFeatures>> required_cells() {
    std::vector<std::pair<VerbClass, VerbFeatures>> cells;
    for (VerbClass c : kVerbClasses) {
      for (Tense t : kFiniteGridTenses)
        for (Person p : kPersons)
          for (Number n : kNumbers) cells.emplace_back(c, finite(t, p, n));
      cells.emplace_back(c, nonfinite(Tense::kParticiple));
      cells.emplace_back(c, nonfinite(Tense::kGerund));
    }
    return cells;
  }

  std::vector<std::string> missing_cells() const {
    std::vector<std::string> out;
    for (const auto& [c, f] : required_cells())
      if (!ending(c, f)) out.push_back(std::string(to_string(c)) + " " + describe(f));
    return out;
  }

 private:
  using FeatureKey = std::tuple<int, int, int>;
  static FeatureKey key(const VerbFeatures& f) {
    return {static_cast<int>(f.tense), f.person ? static_cast<int>(*f.person) : -1,
            f.number ? static_cast<int>(*f.number) : -1};
  }

  std::map<std::pair<int, FeatureKey>, std::string> endings_;
  std::map<std::pair<std::string, FeatureKey>, std::string> irregulars_;
};

namespace detail {

inline VerbFeatures parse_cell_features(const std::vector<std::string>& fields, const std::string& source,
                                        std::size_t line) {
  const auto tense = parse_tense(text::trim(fields[1]));
  if (!tense) throw ParseError(source, line, "unknown tense '" + fields[1] + "'");
  const auto person_s = text::trim(fields[2]);
  const auto number_s = text::trim(fields[3]);
  if (!is_finite(*tense)) {
    if (person_s != "-" || number_s != "-")
      throw ParseError(source, line, "non-finite cells take '-' for person and number");
    return nonfinite(*tense);
  }
  const auto person = parse_person(person_s);
  const auto number = parse_number(number_s);
  if (!person || !number) throw ParseError(source, line, "bad person/number");
  return finite(*tense, *person, *number);
}

}  // namespace detail

/// `class<TAB>tense<TAB>person<TAB>number<TAB>ending` and
/// `lemma<TAB>tense<TAB>person<TAB>number<TAB>form`. Non-finite rows use `-`
/// for person and number. An empty ending is allowed.
inline ConjugationTable parse_conjugation_table(std::string_view paradigms,
                                                const std::string& paradigm_source,
                                                std::string_view irregulars,
                                                const std::string& irregular_source,
                                                bool require_complete = true) {
  ConjugationTable table;
  for (const auto& row : text::parse_tsv(paradigms, paradigm_source)) {
    if (row.fields.size() != 5 && row.fields.size() != 4)
      throw ParseError(paradigm_source, row.line, "expected class<TAB>tense<TAB>person<TAB>number<TAB>ending");
    const auto cls = parse_verb_class(text::trim(row.fields[0]));
    if (!cls) throw ParseError(paradigm_source, row.line, "unknown verb class '" + row.fields[0] + "'");
    const auto f = detail::parse_cell_features(row.fields, paradigm_source, row.line);
    table.set_ending(*cls, f, row.fields.size() == 5 ? std::string(text::trim(row.fields[4])) : "");
  }
  for (const auto& row : text::parse_tsv(irregulars, irregular_source)) {
    if (row.fields.size() != 5)
      throw ParseError(irregular_source, row.line, "expected lemma<TAB>tense<TAB>person<TAB>number<TAB>form");
    const auto f = detail::parse_cell_features(row.fields, irregular_source, row.line);
    const std::string form(text::trim(row.fields[4]));
    if (form.empty()) throw ParseError(irregular_source, row.line, "empty irregular form");
    table.set_irregular(utf8::lower(text::trim(row.fields[0])), f, form);
  }
  if (require_complete) {
    if (const auto missing = table.missing_cells(); !missing.empty())
      throw ParseError(paradigm_source, 0, "missing paradigm cell " + missing.front());
  }
  return table;
}

inline ConjugationTable load_conjugation_table(const std::filesystem::path& paradigms,
                                               const std::filesystem::path& irregulars) {
  return parse_conjugation_table(text::read_file(paradigms), paradigms.string(),
                                 text::read_file(irregulars), irregulars.string());
}

/// Inflects a Ladino infinitive. Throws ConjugationError for a lemma that is
/// not an infinitive or a missing cell, UnsupportedTenseError for tenses
/// outside the grid (conditional, unconverted present perfect).
inline std::string conjugate(const std::string& lemma, const VerbFeatures& features,
                             const ConjugationTable& table, const OrthoRuleSet& ortho) {
  if (features.tense == Tense::kPresentPerfect)
    throw UnsupportedTenseError("present perfect must be converted to preterite before conjugation");
  if (features.tense == Tense::kConditional)
    throw UnsupportedTenseError("conditional is outside the implemented paradigm grid");
  const auto cls = verb_class_of(lemma);
  if (!cls) throw ConjugationError("'" + lemma + "' is not an -ar/-er/-ir infinitive");
  if (features.tense == Tense::kInfinitive) return lemma;
  if (is_finite(features.tense) && (!features.person || !features.number))
    throw ConjugationError("finite tense " + describe(features) + " without person/number");
  if (const auto form = table.irregular(lemma, features)) return respell(*form, ortho);
  const auto ending = table.ending(*cls, features);
  if (!ending)
    throw ConjugationError("missing paradigm cell " + std::string(to_string(*cls)) + " " +
                           describe(features) + " for '" + lemma + "'");
  return respell(lemma.substr(0, lemma.size() - 2) + std::string(*ending), ortho);
}

/// Ladino plural: -s after a vowel, -es otherwise; words already ending in
/// -s are left alone.
inline std::string pluralize(const std::string& word) {
  if (word.empty() || utf8::ends_with(word, "s")) return word;
  const char32_t last = utf8::fold_accent(utf8::to_lower(utf8::decode(word).back()));
  const bool vowel = last == U'a' || last == U'e' || last == U'i' || last == U'o' || last == U'u';
  return word + (vowel ? "s" : "es");
}

/// Copies feminine/plural agreement from a Spanish participle (-ada, -idos,
/// ...) onto a masculine singular Ladino participle ending in -o.
inline std::string participle_agreement(const std::string& ladino, std::string_view spanish) {
  if (!utf8::ends_with(ladino, "o")) return ladino;
  const std::string stem = ladino.substr(0, ladino.size() - 1);
  const std::string folded = utf8::fold_key(spanish);
  if (utf8::ends_with(folded, "adas") || utf8::ends_with(folded, "idas")) return stem + "as";
  if (utf8::ends_with(folded, "ados") || utf8::ends_with(folded, "idos")) return stem + "os";
  if (utf8::ends_with(folded, "ada") || utf8::ends_with(folded, "ida")) return stem + "a";
  return ladino;
}

}  // namespace ladino
