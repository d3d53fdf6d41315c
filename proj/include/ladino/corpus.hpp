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

// Parallel corpus handling. Corpora travel as Moses-format file pairs,
// `name.src-tgt.src` and `name.src-tgt.tgt`, aligned by line.

#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <random>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "ladino/error.hpp"
#include "ladino/moses_tokenizer.hpp"
#include "ladino/text_io.hpp"
#include "ladino/translator.hpp"
#include "ladino/utf8.hpp"

namespace ladino {

struct ParallelCorpus {
  std::string name;
  std::string src_lang;
  std::string tgt_lang;
  std::vector<std::pair<std::string, std::string>> pairs;

  std::size_t size() const noexcept { return pairs.size(); }

  std::vector<std::string> sources() const {
    std::vector<std::string> out;
    out.reserve(pairs.size());
    for (const auto& p : pairs) out.push_back(p.first);
    return out;
  }

  std::vector<std::string> targets() const {
    std::vector<std::string> out;
    out.reserve(pairs.size());
    for (const auto& p : pairs) out.push_back(p.second);
    return out;
  }

  bool operator==(const ParallelCorpus&) const = default;
};

/// Builds a corpus from two aligned sides; lines must not contain LF.
inline ParallelCorpus make_corpus(std::string name, std::string src_lang, std::string tgt_lang,
                                  const std::vector<std::string>& src,
                                  const std::vector<std::string>& tgt) {
  if (src.size() != tgt.size()) throw AlignmentError("corpus sides are not aligned", src.size(), tgt.size());
  ParallelCorpus c{std::move(name), std::move(src_lang), std::move(tgt_lang), {}};
  c.pairs.reserve(src.size());
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (src[i].find('\n') != std::string::npos || tgt[i].find('\n') != std::string::npos)
      throw Error("corpus line " + std::to_string(i + 1) + " contains a newline");
    c.pairs.emplace_back(src[i], tgt[i]);
  }
  return c;
}

// ---------------------------------------------------------------------------
// Moses files

struct MosesPaths {
  std::filesystem::path src;
  std::filesystem::path tgt;
};

/// `prefix.src-tgt.src` / `prefix.src-tgt.tgt`
inline MosesPaths moses_paths(const std::string& prefix, const std::string& src_lang,
                              const std::string& tgt_lang) {
  const std::string base = prefix + "." + src_lang + "-" + tgt_lang + ".";
  return {base + src_lang, base + tgt_lang};
}

inline ParallelCorpus read_moses(const std::filesystem::path& src, const std::filesystem::path& tgt,
                                 std::string src_lang, std::string tgt_lang, std::string name = {}) {
  const auto a = text::read_lines(src);
  const auto b = text::read_lines(tgt);
  if (a.size() != b.size())
    throw AlignmentError(src.string() + " and " + tgt.string() + " are not aligned", a.size(), b.size());
  return make_corpus(std::move(name), std::move(src_lang), std::move(tgt_lang), a, b);
}

inline MosesPaths write_moses(const ParallelCorpus& corpus, const std::string& prefix) {
  const auto paths = moses_paths(prefix, corpus.src_lang, corpus.tgt_lang);
  text::write_lines(paths.src, corpus.sources());
  text::write_lines(paths.tgt, corpus.targets());
  return paths;
}

// ---------------------------------------------------------------------------
// Sentence segmentation

inline constexpr std::string_view kDefaultAbbreviations[] = {
    "sr.",  "sra.",  "srta.", "sres.", "dr.",   "dra.", "dres.",  "prof.",   "profa.",
    "lic.", "ing.",  "arq.",  "ud.",   "uds.",  "vd.",  "vds.",   "etc.",    "p.ej.",
    "n\xC3\xBAm.",   "p\xC3\xA1g.",   "p\xC3\xA1gs.",   "cap.",   "art.",    "av.",
    "avda.", "dpto.", "sto.", "sta.",  "mr.",   "mrs.", "ms.",    "st.",     "vs.",
    "e.g.", "i.e."};

class SentenceSegmenter {
 public:
  SentenceSegmenter() {
    for (auto a : kDefaultAbbreviations) abbreviations_.insert(std::string(a));
  }
  explicit SentenceSegmenter(std::unordered_set<std::string> abbreviations)
      : abbreviations_(std::move(abbreviations)) {}

  /// One abbreviation per line, lowercase with its final period.
  static SentenceSegmenter from_file(const std::filesystem::path& path) {
    std::unordered_set<std::string> abbr;
    for (const auto& line : text::read_lines(path)) {
      const auto t = text::trim(line);
      if (!t.empty() && t.front() != '#') abbr.insert(utf8::lower(t));
    }
    return SentenceSegmenter(std::move(abbr));
  }

  const std::unordered_set<std::string>& abbreviations() const noexcept { return abbreviations_; }

  /// Splits after . ! ? or … (optionally followed by closing quotes or
  /// brackets) when the next word starts with an uppercase letter, a digit or
  /// opening punctuation. Known abbreviations and single-letter initials do
  /// not end a sentence. A blank line always does. Whitespace inside a
  /// sentence is collapsed to single spaces.
  std::vector<std::string> segment(std::string_view text) const {
    struct Chunk {
      std::u32string text;
      bool paragraph_after = false;
    };
    std::vector<Chunk> chunks;
    const std::u32string s = utf8::decode(text::strip_bom(text));
    std::size_t i = 0;
    while (i < s.size()) {
      std::size_t newlines = 0;
      while (i < s.size() && utf8::is_space(s[i])) newlines += s[i++] == U'\n';
      if (newlines >= 2 && !chunks.empty()) chunks.back().paragraph_after = true;
      const std::size_t start = i;
      while (i < s.size() && !utf8::is_space(s[i])) ++i;
      if (i > start) chunks.push_back({s.substr(start, i - start), false});
    }

    std::vector<std::string> out;
    std::u32string current;
    for (std::size_t k = 0; k < chunks.size(); ++k) {
      if (!current.empty()) current.push_back(U' ');
      current += chunks[k].text;
      const bool last = k + 1 == chunks.size();
      if (last || chunks[k].paragraph_after || ends_sentence(chunks[k].text, chunks[k + 1].text)) {
        out.push_back(utf8::encode(current));
        current.clear();
      }
    }
    return out;
  }

 private:
  static bool is_closer(char32_t c) {
    return c == U'"' || c == U'\'' || c == U')' || c == U']' || c == 0xBB || c == 0x201D || c == 0x2019;
  }
  static bool is_opener(char32_t c) {
    return c == U'"' || c == U'\'' || c == U'(' || c == U'[' || c == 0xBF || c == 0xA1 || c == 0xAB ||
           c == 0x201C || c == 0x2018;
  }

  bool ends_sentence(const std::u32string& word, const std::u32string& next) const {
    std::size_t end = word.size();
    while (end > 0 && is_closer(word[end - 1])) --end;
    if (end == 0) return false;
    const char32_t term = word[end - 1];
    if (term != U'.' && term != U'!' && term != U'?' && term != 0x2026) return false;

    std::size_t j = 0;
    while (j < next.size() && is_opener(next[j])) ++j;
    if (j == next.size()) return j > 0;
    if (!utf8::is_upper(next[j]) && !utf8::is_digit(next[j])) return false;

    if (term == U'.') {
      std::u32string core = word.substr(0, end);
      std::size_t lead = 0;
      while (lead < core.size() && is_opener(core[lead])) ++lead;
      core = core.substr(lead);
      if (abbreviations_.count(utf8::encode(utf8::lower(core)))) return false;
      if (core.size() == 2 && utf8::is_letter(core[0])) return false;  // initial: "J."
    }
    return true;
  }

  std::unordered_set<std::string> abbreviations_;
};

inline std::vector<std::string> segment_sentences(std::string_view text) {
  static const SentenceSegmenter segmenter;
  return segmenter.segment(text);
}

// ---------------------------------------------------------------------------
// Statistics

struct CorpusStats {
  std::size_t sentence_count = 0;
  std::size_t token_count = 0;

  CorpusStats& operator+=(const CorpusStats& o) {
    sentence_count += o.sentence_count;
    token_count += o.token_count;
    return *this;
  }
  friend CorpusStats operator+(CorpusStats a, const CorpusStats& b) { return a += b; }
  bool operator==(const CorpusStats&) const = default;
};

/// One sentence per line; tokens counted with the Moses tokenizer.
inline CorpusStats stats(const std::vector<std::string>& lines, std::string_view lang = "es") {
  CorpusStats st;
  st.sentence_count = lines.size();
  for (const auto& line : lines) st.token_count += moses_tokenize(line, lang).size();
  return st;
}

// ---------------------------------------------------------------------------
// Synthetic data

using BatchTranslator = std::function<std::vector<TranslationResult>(const std::vector<std::string>&)>;

struct AugmentResult {
  ParallelCorpus other_lad;  // other -> lad
  ParallelCorpus spa_lad;    // spa -> lad
  std::size_t failed_lines = 0;  // lines whose translation errored (Ladino side left empty)
};

/// Translates the Spanish side of an other/Spanish bitext and pairs the
/// Ladino output with both original sides.
inline AugmentResult augment(const std::vector<std::string>& spa_side,
                             const std::vector<std::string>& other_side, const std::string& other_lang,
                             const BatchTranslator& translator, const std::string& name = "synthetic") {
  if (spa_side.size() != other_side.size())
    throw AlignmentError("Spanish and " + other_lang + " sides are not aligned", spa_side.size(),
                         other_side.size());
  const auto results = translator(spa_side);
  if (results.size() != spa_side.size())
    throw AlignmentError("translator changed the line count", spa_side.size(), results.size());
  AugmentResult out;
  std::vector<std::string> lad;
  lad.reserve(results.size());
  for (const auto& r : results) {
    out.failed_lines += r.error.has_value();
    lad.push_back(r.output);
  }
  out.other_lad = make_corpus(name, other_lang, "lad", other_side, lad);
  out.spa_lad = make_corpus(name, "spa", "lad", spa_side, lad);
  return out;
}

inline AugmentResult augment(const std::vector<std::string>& spa_side,
                             const std::vector<std::string>& other_side, const std::string& other_lang,
                             const RuleData& data, const std::string& name = "synthetic") {
  return augment(
      spa_side, other_side, other_lang,
      [&data](const std::vector<std::string>& lines) { return translate_batch(lines, data); }, name);
}

/// Concatenates Spanish-Ladino corpora in order, dropping exact duplicate
/// pairs (the first occurrence stays).
inline ParallelCorpus merge_spanish_sides(const std::vector<ParallelCorpus>& corpora,
                                          std::string name = "merged") {
  ParallelCorpus out{std::move(name), "spa", "lad", {}};
  std::unordered_set<std::string> seen;
  for (const auto& c : corpora) {
    if (c.src_lang != "spa" || c.tgt_lang != "lad")
      throw Error("cannot merge " + c.src_lang + "-" + c.tgt_lang + " corpus '" + c.name +
                  "' into spa-lad");
    for (const auto& p : c.pairs) {
      if (seen.insert(p.first + '\n' + p.second).second) out.pairs.push_back(p);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Dev/test split

namespace detail {

// Unbiased draw in [0, n) independent of the standard library's
// distribution implementations.
inline std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

}  // namespace detail

struct DevTestSplit {
  ParallelCorpus test;
  ParallelCorpus dev;
};

/// Seeded Fisher-Yates shuffle; the first `test_size` shuffled pairs form the
/// test set. Both parts keep the original corpus order.
inline DevTestSplit split_devtest(const ParallelCorpus& corpus, std::size_t test_size, std::uint64_t seed) {
  if (test_size > corpus.size())
    throw Error("test size " + std::to_string(test_size) + " exceeds corpus size " +
                std::to_string(corpus.size()));
  std::vector<std::size_t> order(corpus.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::mt19937_64 rng(seed);
  for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[detail::bounded(rng, i)]);

  std::vector<bool> in_test(corpus.size(), false);
  for (std::size_t i = 0; i < test_size; ++i) in_test[order[i]] = true;
  DevTestSplit out{{corpus.name + ".test", corpus.src_lang, corpus.tgt_lang, {}},
                   {corpus.name + ".dev", corpus.src_lang, corpus.tgt_lang, {}}};
  for (std::size_t i = 0; i < corpus.size(); ++i)
    (in_test[i] ? out.test : out.dev).pairs.push_back(corpus.pairs[i]);
  return out;
}

}  // namespace ladino
