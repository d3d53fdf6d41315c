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

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace ladino {

enum class Pos { kVerb, kNoun, kAdj, kDet, kPron, kAdp, kAdv, kConj, kPunct, kNum, kOther };

enum class Tense {
  kPresent,
  kPreterite,
  kImperfect,
  kFuture,
  kConditional,
  kParticiple,
  kInfinitive,
  kGerund,
  kPresentPerfect,
};

enum class Person { k1, k2, k3 };
enum class Number { kSingular, kPlural };
enum class VerbClass { kAr, kEr, kIr };

inline constexpr std::array<Tense, 4> kFiniteGridTenses = {Tense::kPresent, Tense::kPreterite,
                                                           Tense::kImperfect, Tense::kFuture};
inline constexpr std::array<Person, 3> kPersons = {Person::k1, Person::k2, Person::k3};
inline constexpr std::array<Number, 2> kNumbers = {Number::kSingular, Number::kPlural};
inline constexpr std::array<VerbClass, 3> kVerbClasses = {VerbClass::kAr, VerbClass::kEr,
                                                          VerbClass::kIr};

inline bool is_finite(Tense t) {
  return t != Tense::kParticiple && t != Tense::kInfinitive && t != Tense::kGerund;
}

struct VerbFeatures {
  Tense tense = Tense::kInfinitive;
  std::optional<Person> person;  // absent for non-finite forms
  std::optional<Number> number;

  bool operator==(const VerbFeatures&) const = default;
};

inline VerbFeatures finite(Tense t, Person p, Number n) { return {t, p, n}; }
inline VerbFeatures nonfinite(Tense t) { return {t, std::nullopt, std::nullopt}; }

inline std::string_view to_string(Pos p) {
  switch (p) {
    case Pos::kVerb: return "VERB";
    case Pos::kNoun: return "NOUN";
    case Pos::kAdj: return "ADJ";
    case Pos::kDet: return "DET";
    case Pos::kPron: return "PRON";
    case Pos::kAdp: return "ADP";
    case Pos::kAdv: return "ADV";
    case Pos::kConj: return "CONJ";
    case Pos::kPunct: return "PUNCT";
    case Pos::kNum: return "NUM";
    case Pos::kOther: return "OTHER";
  }
  return "OTHER";
}

inline std::string_view to_string(Tense t) {
  switch (t) {
    case Tense::kPresent: return "PRESENT";
    case Tense::kPreterite: return "PRETERITE";
    case Tense::kImperfect: return "IMPERFECT";
    case Tense::kFuture: return "FUTURE";
    case Tense::kConditional: return "CONDITIONAL";
    case Tense::kParticiple: return "PARTICIPLE";
    case Tense::kInfinitive: return "INFINITIVE";
    case Tense::kGerund: return "GERUND";
    case Tense::kPresentPerfect: return "PRESENT_PERFECT";
  }
  return "";
}

inline std::string_view to_string(Person p) {
  switch (p) {
    case Person::k1: return "P1";
    case Person::k2: return "P2";
    case Person::k3: return "P3";
  }
  return "";
}

inline std::string_view to_string(Number n) { return n == Number::kSingular ? "SG" : "PL"; }

inline std::string_view to_string(VerbClass c) {
  switch (c) {
    case VerbClass::kAr: return "AR";
    case VerbClass::kEr: return "ER";
    case VerbClass::kIr: return "IR";
  }
  return "";
}

/// Infinitive ending for a class: "ar", "er", "ir".
inline std::string_view infinitive_ending(VerbClass c) {
  switch (c) {
    case VerbClass::kAr: return "ar";
    case VerbClass::kEr: return "er";
    case VerbClass::kIr: return "ir";
  }
  return "";
}

inline std::optional<VerbClass> verb_class_of(std::string_view lemma) {
  if (lemma.size() < 2) return std::nullopt;
  const auto tail = lemma.substr(lemma.size() - 2);
  if (tail == "ar") return VerbClass::kAr;
  if (tail == "er") return VerbClass::kEr;
  if (tail == "ir") return VerbClass::kIr;
  return std::nullopt;
}

template <typename E, std::size_t N>
std::optional<E> parse_enum(std::string_view s, const std::array<E, N>& all) {
  for (E e : all)
    if (to_string(e) == s) return e;
  return std::nullopt;
}

inline std::optional<Pos> parse_pos(std::string_view s) {
  return parse_enum(s, std::array{Pos::kVerb, Pos::kNoun, Pos::kAdj, Pos::kDet, Pos::kPron,
                                  Pos::kAdp, Pos::kAdv, Pos::kConj, Pos::kPunct, Pos::kNum,
                                  Pos::kOther});
}

inline std::optional<Tense> parse_tense(std::string_view s) {
  return parse_enum(s, std::array{Tense::kPresent, Tense::kPreterite, Tense::kImperfect,
                                  Tense::kFuture, Tense::kConditional, Tense::kParticiple,
                                  Tense::kInfinitive, Tense::kGerund, Tense::kPresentPerfect});
}

inline std::optional<Person> parse_person(std::string_view s) { return parse_enum(s, kPersons); }
inline std::optional<Number> parse_number(std::string_view s) { return parse_enum(s, kNumbers); }
inline std::optional<VerbClass> parse_verb_class(std::string_view s) {
  return parse_enum(s, kVerbClasses);
}

inline std::string describe(const VerbFeatures& f) {
  std::string out(to_string(f.tense));
  if (f.person) out += "," + std::string(to_string(*f.person));
  if (f.number) out += "," + std::string(to_string(*f.number));
  return out;
}

}  // namespace ladino
