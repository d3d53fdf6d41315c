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


// Reference implementations written independently of the library, used as
// test oracles.

#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace ladino::testing {

// ---------------------------------------------------------------------------
// BLEU over whitespace-separated, already-lowercased text.

inline std::vector<std::string> whitespace_tokens(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

/// Straight from the definition: clipped n-gram matches summed over the
/// corpus, geometric mean of the four precisions, brevity penalty.
inline double oracle_bleu(const std::vector<std::string>& hyps, const std::vector<std::string>& refs) {
  double matches[4] = {0, 0, 0, 0};
  double totals[4] = {0, 0, 0, 0};
  double hyp_len = 0;
  double ref_len = 0;
  for (std::size_t s = 0; s < hyps.size(); ++s) {
    const auto h = whitespace_tokens(hyps[s]);
    const auto r = whitespace_tokens(refs[s]);
    hyp_len += static_cast<double>(h.size());
    ref_len += static_cast<double>(r.size());
    for (std::size_t n = 1; n <= 4; ++n) {
      std::map<std::vector<std::string>, int> hc, rc;
      for (std::size_t i = 0; i + n <= h.size(); ++i) ++hc[std::vector<std::string>(h.begin() + i, h.begin() + i + n)];
      for (std::size_t i = 0; i + n <= r.size(); ++i) ++rc[std::vector<std::string>(r.begin() + i, r.begin() + i + n)];
      for (const auto& [g, c] : hc) {
        totals[n - 1] += c;
        const auto it = rc.find(g);
        if (it != rc.end()) matches[n - 1] += std::min(c, it->second);
      }
    }
  }
  double log_mean = 0;
  for (int n = 0; n < 4; ++n) {
    if (matches[n] == 0) return 0.0;
    log_mean += std::log(matches[n] / totals[n]) / 4.0;
  }
  const double bp = hyp_len >= ref_len ? 1.0 : std::exp(1.0 - ref_len / hyp_len);
  return 100.0 * bp * std::exp(log_mean);
}

/// Random corpus over a small lowercase vocabulary so that 4-gram matches
/// are common. Words contain letters only, so any tokenizer leaves them be.
struct RandomCorpus {
  std::vector<std::string> hyps;
  std::vector<std::string> refs;
};

inline RandomCorpus random_corpus(std::uint64_t seed) {
  static const char* vocab[] = {"el", "livro", "kafe", "meldar", "la", "kaza", "de", "i", "ke", "bueno", "ija", "ijo"};
  std::mt19937_64 rng(seed);
  const auto pick = [&](std::uint64_t n) { return static_cast<std::size_t>(rng() % n); };
  RandomCorpus c;
  const std::size_t lines = 3 + pick(8);
  for (std::size_t l = 0; l < lines; ++l) {
    std::vector<std::string> ref;
    const std::size_t len = 5 + pick(10);
    for (std::size_t i = 0; i < len; ++i) ref.push_back(vocab[pick(std::size(vocab))]);
    // Hypothesis: the reference with random edits, so precisions land in (0, 1).
    std::vector<std::string> hyp;
    for (const auto& w : ref) {
      const auto roll = pick(10);
      if (roll == 0) continue;                                  // deletion
      hyp.push_back(roll == 1 ? vocab[pick(std::size(vocab))] : w);  // substitution
      if (roll == 2) hyp.push_back(vocab[pick(std::size(vocab))]);  // insertion
    }
    const auto join = [](const std::vector<std::string>& v) {
      std::string s;
      for (const auto& w : v) s += (s.empty() ? "" : " ") + w;
      return s;
    };
    c.hyps.push_back(join(hyp));
    c.refs.push_back(join(ref));
  }
  return c;
}

// ---------------------------------------------------------------------------
// Spanish-like words for orthography properties.

/// Draws words from Spanish syllable shapes, covering every grapheme the
/// respelling rules touch (accents, ü, ñ, ll, qu, gue/gui, c, h, b, y) plus
/// occasional capitalisation.
class SpanishWordGenerator {
 public:
  explicit SpanishWordGenerator(std::uint64_t seed) : rng_(seed) {}

  std::string next() {
    static const char* onsets[] = {"", "", "b", "c", "ch", "d", "f", "g", "gu", "h", "j", "l", "ll", "m", "n",
                                   "\xC3\xB1", "p", "qu", "r", "rr", "s", "t", "v", "y", "z", "br", "cl", "tr",
                                   "pl", "gr", "k", "x"};
    static const char* vowels[] = {"a", "e", "i", "o", "u", "\xC3\xA1", "\xC3\xA9", "\xC3\xAD", "\xC3\xB3",
                                   "\xC3\xBA", "\xC3\xBC", "ue", "ie", "io", "ai", "ei", "y"};
    static const char* codas[] = {"", "", "", "n", "s", "r", "l", "z", "d", "c", "b", "x"};
    std::string w;
    const int syllables = 1 + static_cast<int>(rng_() % 4);
    for (int i = 0; i < syllables; ++i) {
      w += onsets[rng_() % std::size(onsets)];
      w += vowels[rng_() % std::size(vowels)];
      w += codas[rng_() % std::size(codas)];
    }
    if (rng_() % 10 == 0) w = "h" + w;
    switch (rng_() % 12) {
      case 0: return capitalize_ascii(w);
      case 1: return "y";
      default: return w;
    }
  }

 private:
  static std::string capitalize_ascii(std::string w) {
    if (!w.empty() && w[0] >= 'a' && w[0] <= 'z') w[0] = static_cast<char>(w[0] - 'a' + 'A');
    return w;
  }

  std::mt19937_64 rng_;
};

/// Graphemes that must not survive respelling, checked byte-wise on the
/// lowercased UTF-8 string.
inline std::string forbidden_grapheme(const std::string& lower_word) {
  static const char* accents[] = {"\xC3\xA1", "\xC3\xA9", "\xC3\xAD", "\xC3\xB3", "\xC3\xBA", "\xC3\xBC"};
  if (lower_word.find('q') != std::string::npos) return "q";
  if (lower_word.find("\xC3\xB1") != std::string::npos) return "enye";
  if (lower_word.find("ll") != std::string::npos) return "ll";
  for (const char* a : accents)
    if (lower_word.find(a) != std::string::npos) return "accent";
  for (std::size_t i = 0; i + 1 < lower_word.size(); ++i) {
    if (lower_word[i] == 'c' && (lower_word[i + 1] == 'a' || lower_word[i + 1] == 'o' || lower_word[i + 1] == 'u'))
      return "c+aou";
  }
  if (lower_word.size() > 1 && lower_word[0] == 'h') return "initial h";
  return "";
}

}  // namespace ladino::testing
