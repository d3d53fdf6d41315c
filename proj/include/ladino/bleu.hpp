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

// Corpus-level BLEU (n = 1..4, clipped counts, brevity penalty) over
// lowercased, Moses-tokenized text.

#pragma once

#include <array>
#include <cmath>
#include <cstdio>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ladino/error.hpp"
#include "ladino/moses_tokenizer.hpp"
#include "ladino/utf8.hpp"

namespace ladino {

inline constexpr int kBleuOrder = 4;

enum class BleuSmoothing { kNone, kExp };

struct BleuOptions {
  bool lowercase = true;
  BleuSmoothing smoothing = BleuSmoothing::kNone;
  std::string lang = "es";
};

struct BleuScore {
  double score = 0.0;                       // 0..100
  std::array<double, kBleuOrder> ngram_precisions{};  // 0..1
  double brevity_penalty = 0.0;
  std::size_t hyp_length = 0;
  std::size_t ref_length = 0;
  std::array<std::size_t, kBleuOrder> matches{};
  std::array<std::size_t, kBleuOrder> totals{};
};

/// Sufficient statistics; adding two of these is how lines are reduced.
struct BleuStats {
  std::array<std::size_t, kBleuOrder> matches{};
  std::array<std::size_t, kBleuOrder> totals{};
  std::size_t hyp_length = 0;
  std::size_t ref_length = 0;

  BleuStats& operator+=(const BleuStats& o) {
    for (int n = 0; n < kBleuOrder; ++n) {
      matches[n] += o.matches[n];
      totals[n] += o.totals[n];
    }
    hyp_length += o.hyp_length;
    ref_length += o.ref_length;
    return *this;
  }
};

namespace detail {

inline std::unordered_map<std::string, std::size_t> ngram_counts(const std::vector<std::string>& toks,
                                                                 int n) {
  std::unordered_map<std::string, std::size_t> counts;
  if (static_cast<int>(toks.size()) < n) return counts;
  for (std::size_t i = 0; i + n <= toks.size(); ++i) {
    std::string key = toks[i];
    for (int k = 1; k < n; ++k) {
      key += '\x1f';
      key += toks[i + k];
    }
    ++counts[key];
  }
  return counts;
}

inline std::vector<std::string> bleu_tokens(std::string_view line, const BleuOptions& opt) {
  auto toks = moses_tokenize(line, opt.lang);
  if (opt.lowercase)
    for (auto& t : toks) t = utf8::lower(t);
  return toks;
}

}  // namespace detail

/// Statistics for one pre-tokenized hypothesis/reference pair.
inline BleuStats sentence_stats(const std::vector<std::string>& hyp, const std::vector<std::string>& ref) {
  BleuStats st;
  st.hyp_length = hyp.size();
  st.ref_length = ref.size();
  for (int n = 1; n <= kBleuOrder; ++n) {
    const auto h = detail::ngram_counts(hyp, n);
    const auto r = detail::ngram_counts(ref, n);
    for (const auto& [gram, count] : h) {
      st.totals[n - 1] += count;
      if (const auto it = r.find(gram); it != r.end()) st.matches[n - 1] += std::min(count, it->second);
    }
  }
  return st;
}

inline BleuScore score_from_stats(const BleuStats& st, BleuSmoothing smoothing = BleuSmoothing::kNone) {
  BleuScore out;
  out.matches = st.matches;
  out.totals = st.totals;
  out.hyp_length = st.hyp_length;
  out.ref_length = st.ref_length;
  for (int n = 0; n < kBleuOrder; ++n)
    out.ngram_precisions[n] = st.totals[n] ? static_cast<double>(st.matches[n]) / st.totals[n] : 0.0;

  if (st.hyp_length == 0) {
    out.brevity_penalty = 0.0;
  } else if (st.hyp_length < st.ref_length) {
    out.brevity_penalty = std::exp(1.0 - static_cast<double>(st.ref_length) / st.hyp_length);
  } else {
    out.brevity_penalty = 1.0;
  }

  double log_sum = 0.0;
  double smooth = 1.0;
  for (int n = 0; n < kBleuOrder; ++n) {
    double p;
    if (st.totals[n] == 0) return out;
    if (st.matches[n] == 0) {
      if (smoothing == BleuSmoothing::kNone) return out;
      smooth *= 2.0;
      p = 1.0 / (smooth * st.totals[n]);
    } else {
      p = static_cast<double>(st.matches[n]) / st.totals[n];
    }
    log_sum += std::log(p);
  }
  out.score = 100.0 * out.brevity_penalty * std::exp(log_sum / kBleuOrder);
  return out;
}

/// Corpus BLEU. Throws AlignmentError on differing line counts and Error on
/// an empty corpus or one whose references are all empty.
inline BleuScore corpus_bleu(const std::vector<std::string>& hypotheses,
                             const std::vector<std::string>& references, const BleuOptions& opt = {}) {
  if (hypotheses.size() != references.size())
    throw AlignmentError("hypothesis and reference line counts differ", hypotheses.size(),
                         references.size());
  if (hypotheses.empty()) throw Error("BLEU needs at least one segment");
  BleuStats total;
  for (std::size_t i = 0; i < hypotheses.size(); ++i)
    total += sentence_stats(detail::bleu_tokens(hypotheses[i], opt), detail::bleu_tokens(references[i], opt));
  if (total.ref_length == 0) throw Error("all references are empty");
  return score_from_stats(total, opt.smoothing);
}

/// `BLEU = 77.88 (100.0/100.0/100.0/100.0, BP=0.779, hyp_len=4, ref_len=5)`
inline std::string format_bleu(const BleuScore& s) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "BLEU = %.2f (%.1f/%.1f/%.1f/%.1f, BP=%.3f, hyp_len=%zu, ref_len=%zu)",
                s.score, 100 * s.ngram_precisions[0], 100 * s.ngram_precisions[1],
                100 * s.ngram_precisions[2], 100 * s.ngram_precisions[3], s.brevity_penalty,
                s.hyp_length, s.ref_length);
  return buf;
}

}  // namespace ladino
