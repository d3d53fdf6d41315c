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

// Spanish -> Judeo-Spanish shallow-transfer pipeline:
//
//   tokenize -> analyze -> fuse present perfects -> per-token transfer
//            -> phrase corrections -> detokenize
//
// Per-token transfer precedence:
//   1. dictionary hit on the surface form (plural copied onto a singular value)
//   2. dictionary hit on the lemma: verbs are conjugated with the source
//      features, plural nouns get a Ladino plural
//   3. orthographic respelling of the surface form

#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "ladino/analysis.hpp"
#include "ladino/error.hpp"
#include "ladino/lexicon.hpp"
#include "ladino/morphogen.hpp"
#include "ladino/orthography.hpp"
#include "ladino/tokenizer.hpp"
#include "ladino/utf8.hpp"

#ifndef LADINO_DEFAULT_DATA_DIR
#define LADINO_DEFAULT_DATA_DIR "data"
#endif

namespace ladino {

enum class Mechanism { kDictSurface, kDictLemmaConjugated, kOrthoFallback, kPhraseRule, kPunctPassthrough };

inline std::string_view to_string(Mechanism m) {
  switch (m) {
    case Mechanism::kDictSurface: return "DICT_SURFACE";
    case Mechanism::kDictLemmaConjugated: return "DICT_LEMMA_CONJUGATED";
    case Mechanism::kOrthoFallback: return "ORTHO_FALLBACK";
    case Mechanism::kPhraseRule: return "PHRASE_RULE";
    case Mechanism::kPunctPassthrough: return "PUNCT_PASSTHROUGH";
  }
  return "";
}

struct TraceEntry {
  std::string source;  // source surface; "aux participle" for fused perfects
  Mechanism mechanism = Mechanism::kOrthoFallback;
  std::vector<std::string> output;

  bool operator==(const TraceEntry&) const = default;
};

struct TranslationResult {
  std::string output;
  std::vector<TraceEntry> trace;
  std::optional<std::string> error;  // set only by translate_batch

  bool operator==(const TranslationResult&) const = default;
};

/// Everything the pipeline reads. Immutable once loaded.
struct RuleData {
  Lexicon lexicon;
  PhraseRules phrases;
  ConjugationTable conjugation;
  OrthoRuleSet ortho;
  AnalyzerData analyzer;
};

struct RulePaths {
  std::filesystem::path lexicon;
  std::filesystem::path phrases;
  std::filesystem::path ortho;
  std::filesystem::path paradigms;
  std::filesystem::path irregulars;
  std::filesystem::path closed_class;
  std::filesystem::path verb_suffixes;

  /// The standard file names inside one data directory.
  static RulePaths in(const std::filesystem::path& dir) {
    return {dir / "lexicon.tsv",   dir / "phrases.tsv",    dir / "ortho_rules.tsv",
            dir / "paradigms.tsv", dir / "irregulars.tsv", dir / "spanish_closed_class.tsv",
            dir / "verb_suffixes.tsv"};
  }
};

/// $LADINO_DATA_DIR, else the data directory of the source tree.
inline std::filesystem::path default_data_dir() {
  if (const char* env = std::getenv("LADINO_DATA_DIR"); env && *env) return env;
  return LADINO_DEFAULT_DATA_DIR;
}

inline RuleData load_rule_data(const RulePaths& paths, Diagnostics* diag = nullptr) {
  RuleData data;
  data.lexicon = load_lexicon(paths.lexicon, diag);
  data.phrases = load_phrase_rules(paths.phrases);
  data.ortho = load_ortho_rules(paths.ortho);
  data.conjugation = load_conjugation_table(paths.paradigms, paths.irregulars);
  data.analyzer = load_analyzer_data(paths.closed_class, paths.verb_suffixes);
  return data;
}

inline RuleData load_rule_data(const std::filesystem::path& dir = default_data_dir(),
                               Diagnostics* diag = nullptr) {
  return load_rule_data(RulePaths::in(dir), diag);
}

namespace detail {

inline bool is_inverted_punct(std::string_view s) {
  return s == "\xC2\xBF" || s == "\xC2\xA1";  // ¿ ¡
}

inline std::vector<std::string> pluralize_head(const std::string& mapped) {
  auto words = text::split_words(mapped);
  if (!words.empty()) words.front() = pluralize(words.front());
  return words;
}

inline TraceEntry transfer(const AnalyzedToken& tok, const RuleData& data) {
  TraceEntry entry;
  entry.source = tok.auxiliary ? *tok.auxiliary + " " + tok.surface : tok.surface;

  if (tok.pos == Pos::kPunct) {
    entry.mechanism = Mechanism::kPunctPassthrough;
    if (!is_inverted_punct(tok.surface)) entry.output.push_back(tok.surface);
    return entry;
  }

  const bool fused = tok.auxiliary.has_value();
  bool done = false;
  if (!fused) {
    if (const auto mapped = data.lexicon.lookup(tok.normalized)) {
      entry.mechanism = Mechanism::kDictSurface;
      entry.output = text::split_words(*mapped);
      if (tok.plural() && !entry.output.empty() && !utf8::ends_with(entry.output.front(), "s"))
        entry.output = pluralize_head(std::string(*mapped));
      done = true;
    }
  }
  if (!done && tok.pos == Pos::kVerb && tok.features) {
    if (const auto mapped = data.lexicon.lookup(tok.lemma)) {
      auto words = text::split_words(*mapped);
      try {
        words.front() = conjugate(words.front(), *tok.features, data.conjugation, data.ortho);
        if (tok.features->tense == Tense::kParticiple)
          words.front() = participle_agreement(words.front(), tok.normalized);
        entry.mechanism = Mechanism::kDictLemmaConjugated;
        entry.output = std::move(words);
        done = true;
      } catch (const UnsupportedTenseError&) {
        // respelled below
      }
    }
  }
  if (!done && (tok.pos == Pos::kNoun || tok.pos == Pos::kAdj) && tok.plural()) {
    if (const auto mapped = data.lexicon.lookup(tok.lemma)) {
      entry.mechanism = Mechanism::kDictLemmaConjugated;
      entry.output = pluralize_head(std::string(*mapped));
      done = true;
    }
  }
  if (!done && fused) {
    // Unknown participle: conjugate the respelled Spanish lemma so the
    // perfect still comes out as a preterite.
    try {
      entry.output = {conjugate(respell(tok.lemma, data.ortho), *tok.features, data.conjugation,
                                data.ortho)};
      entry.mechanism = Mechanism::kOrthoFallback;
      done = true;
    } catch (const ConjugationError&) {
    }
  }
  if (!done) {
    entry.mechanism = Mechanism::kOrthoFallback;
    entry.output = {respell(tok.surface, data.ortho)};
  }

  const std::string& first_source = tok.auxiliary ? *tok.auxiliary : tok.surface;
  if (utf8::starts_upper(first_source) && !entry.output.empty())
    entry.output.front() = utf8::capitalize(entry.output.front());
  return entry;
}

// Applies phrase corrections over the flattened output, merging every trace
// entry a match touches into one PHRASE_RULE entry.
inline std::vector<TraceEntry> apply_phrases(std::vector<TraceEntry> entries,
                                             const PhraseRules& rules) {
  std::vector<std::string> flat;
  std::vector<std::size_t> owner;
  std::vector<std::size_t> first_token(entries.size() + 1);
  for (std::size_t e = 0; e < entries.size(); ++e) {
    first_token[e] = flat.size();
    for (const auto& t : entries[e].output) {
      flat.push_back(t);
      owner.push_back(e);
    }
  }
  first_token[entries.size()] = flat.size();
  const auto matches = find_phrase_matches(flat, rules);
  if (matches.empty()) return entries;

  std::vector<TraceEntry> out;
  std::size_t next_entry = 0;
  std::size_t m = 0;
  while (m < matches.size()) {
    const std::size_t lo = owner[matches[m].start];
    std::size_t hi = owner[matches[m].start + matches[m].length - 1];
    std::size_t m_end = m + 1;
    while (m_end < matches.size() && owner[matches[m_end].start] <= hi) {
      hi = std::max(hi, owner[matches[m_end].start + matches[m_end].length - 1]);
      ++m_end;
    }
    for (; next_entry < lo; ++next_entry) out.push_back(std::move(entries[next_entry]));

    TraceEntry merged;
    merged.mechanism = Mechanism::kPhraseRule;
    for (std::size_t e = lo; e <= hi; ++e) {
      if (!merged.source.empty()) merged.source += ' ';
      merged.source += entries[e].source;
    }
    std::size_t tok = first_token[lo];
    for (std::size_t k = m; k < m_end; ++k) {
      merged.output.insert(merged.output.end(), flat.begin() + tok, flat.begin() + matches[k].start);
      const auto repl = phrase_replacement(matches[k], flat);
      merged.output.insert(merged.output.end(), repl.begin(), repl.end());
      tok = matches[k].start + matches[k].length;
    }
    merged.output.insert(merged.output.end(), flat.begin() + tok, flat.begin() + first_token[hi + 1]);
    out.push_back(std::move(merged));
    next_entry = hi + 1;
    m = m_end;
  }
  for (; next_entry < entries.size(); ++next_entry) out.push_back(std::move(entries[next_entry]));
  return out;
}

}  // namespace detail

inline std::vector<std::string> output_tokens(const std::vector<TraceEntry>& trace) {
  std::vector<std::string> out;
  for (const auto& e : trace) out.insert(out.end(), e.output.begin(), e.output.end());
  return out;
}

/// Translates one line of Spanish. Unknown vocabulary never fails; broken
/// rule data (a dictionary verb that is not an infinitive, a missing
/// paradigm cell) throws ConjugationError.
inline TranslationResult translate(std::string_view text, const RuleData& data) {
  const auto analyzed =
      detect_present_perfect(analyze(tokenize(text), data.lexicon, data.analyzer));
  std::vector<TraceEntry> entries;
  entries.reserve(analyzed.size());
  for (const auto& tok : analyzed) entries.push_back(detail::transfer(tok, data));
  TranslationResult result;
  result.trace = detail::apply_phrases(std::move(entries), data.phrases);
  result.output = detokenize(output_tokens(result.trace));
  return result;
}

/// Translates every line; result i belongs to line i. A line that fails
/// gets an empty output and its error message; the batch carries on.
inline std::vector<TranslationResult> translate_batch(const std::vector<std::string>& lines,
                                                      const RuleData& data, unsigned workers = 0) {
  std::vector<TranslationResult> results(lines.size());
  const auto run_one = [&](std::size_t i) {
    try {
      results[i] = translate(lines[i], data);
    } catch (const std::exception& e) {
      results[i] = TranslationResult{};
      results[i].error = e.what();
    }
  };
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, lines.size() / 64 + 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < lines.size(); ++i) run_one(i);
    return results;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < lines.size(); i = next++) run_one(i);
    });
  }
  for (auto& t : pool) t.join();
  return results;
}

}  // namespace ladino
