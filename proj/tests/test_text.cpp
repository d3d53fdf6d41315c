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


#include <gtest/gtest.h>

#include <random>

#include "ladino/error.hpp"
#include "ladino/text_io.hpp"
#include "ladino/tokenizer.hpp"
#include "ladino/utf8.hpp"
#include "oracles.hpp"

namespace ladino {
namespace {

using Tokens = std::vector<std::string>;

TEST(Utf8, DecodeEncodeRoundTrip) {
  const std::string s = "a\xC3\xB1" "b\xE2\x80\x9C" "c\xF0\x9F\x98\x80";
  EXPECT_TRUE(utf8::valid(s));
  EXPECT_EQ(utf8::encode(utf8::decode(s)), s);
  EXPECT_EQ(utf8::length(s), 6u);
}

TEST(Utf8, InvalidSequencesAreDetected) {
  EXPECT_FALSE(utf8::valid("\xC3"));
  EXPECT_FALSE(utf8::valid("\xC0\xAF"));        // overlong
  EXPECT_FALSE(utf8::valid("\xED\xA0\x80"));    // surrogate
  EXPECT_EQ(utf8::first_invalid("ab\xFF" "c"), 2u);
  EXPECT_EQ(utf8::decode("a\xFF").back(), utf8::kReplacement);
}

TEST(Utf8, CaseMappingCoversSpanishLetters) {
  EXPECT_EQ(utf8::lower("\xC3\x91" "AND\xC3\x9A"), "\xC3\xB1" "and\xC3\xBA");  // ÑANDÚ
  EXPECT_EQ(utf8::upper("\xC3\xA1" "rbol"), "\xC3\x81" "RBOL");
  EXPECT_EQ(utf8::capitalize("\xC3\xA9l"), "\xC3\x89l");
  EXPECT_TRUE(utf8::starts_upper("\xC3\x81rbol"));
  EXPECT_TRUE(utf8::all_caps("ONU"));
  EXPECT_FALSE(utf8::all_caps("A"));
}

TEST(Utf8, FoldKeyRemovesAccentsButKeepsEnye) {
  EXPECT_EQ(utf8::fold_key("Despu\xC3\xA9s"), "despues");
  EXPECT_EQ(utf8::fold_key("Ma\xC3\xB1" "ana"), "ma\xC3\xB1" "ana");
  EXPECT_EQ(utf8::fold_key("ping\xC3\xBCino"), "pinguino");
}

TEST(TextIo, SplitLinesHandlesBomCrlfAndTrailingNewline) {
  EXPECT_EQ(text::split_lines("\xEF\xBB\xBF" "a\r\nb\n"), (Tokens{"a", "b"}));
  EXPECT_EQ(text::split_lines("a\n\nb"), (Tokens{"a", "", "b"}));
  EXPECT_TRUE(text::split_lines("").empty());
}

TEST(TextIo, ParseTsvSkipsCommentsAndReportsLines) {
  const auto rows = text::parse_tsv("# c\n\nx\ty\n  # indented comment\nz\tw \n", "f");
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].line, 3u);
  EXPECT_EQ(rows[1].fields, (Tokens{"z", "w"}));
  try {
    text::parse_tsv("ok\tok\nbad\xFF\tx\n", "file.tsv");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.source(), "file.tsv");
  }
}

TEST(Tokenizer, SpecExamples) {
  EXPECT_EQ(tokenize("Me gusta leer."), (Tokens{"Me", "gusta", "leer", "."}));
  EXPECT_TRUE(tokenize("").empty());
  EXPECT_EQ(tokenize("\xC2\xBFNo has leido el libro?"),
            (Tokens{"\xC2\xBF", "No", "has", "leido", "el", "libro", "?"}));
}

TEST(Tokenizer, PunctuationSplittingAndJoiners) {
  EXPECT_EQ(tokenize("\xC2\xAB" "Hola\xC2\xBB, dijo."), (Tokens{"\xC2\xAB", "Hola", "\xC2\xBB", ",", "dijo", "."}));
  EXPECT_EQ(tokenize("franco-espa\xC3\xB1ol"), (Tokens{"franco-espa\xC3\xB1ol"}));
  EXPECT_EQ(tokenize("3,5 y 2.000"), (Tokens{"3,5", "y", "2.000"}));
  EXPECT_EQ(tokenize("fin..."), (Tokens{"fin", ".", ".", "."}));
  EXPECT_EQ(tokenize("-no"), (Tokens{"-", "no"}));
}

TEST(Tokenizer, DetokenizeAttachesPunctuation) {
  EXPECT_EQ(detokenize({"No", "meldates", "el", "livro", "?"}), "No meldates el livro?");
  EXPECT_EQ(detokenize({"\xC2\xBF", "Ke", "?"}), "\xC2\xBFKe?");
  EXPECT_EQ(detokenize({"Dize", ":", "\"", "ola", "\"", "."}), "Dize: \"ola\".");
  EXPECT_EQ(detokenize({"a", "(", "b", ")", "c"}), "a (b) c");
  EXPECT_EQ(detokenize({}), "");
}

// Random Spanish-style sentences with conventional punctuation spacing
// survive tokenize -> detokenize unchanged, and tokenization never loses or
// invents a non-space character.
TEST(TokenizerProperty, RoundTripOnConventionallySpacedText) {
  testing::SpanishWordGenerator words(7);
  std::mt19937_64 rng(11);
  const char* wrap[][2] = {{"", "."}, {"\xC2\xBF", "?"}, {"\xC2\xA1", "!"}, {"\xC2\xAB", "\xC2\xBB"}, {"(", ")"}, {"\"", "\""}};
  const char* inner[] = {",", ";", ":"};
  for (int trial = 0; trial < 2000; ++trial) {
    const auto& w = wrap[rng() % std::size(wrap)];
    std::string s = w[0];
    const int n = 1 + static_cast<int>(rng() % 8);
    for (int i = 0; i < n; ++i) {
      if (i > 0) s += ' ';
      s += words.next();
      if (i + 1 < n && rng() % 5 == 0) s += inner[rng() % std::size(inner)];
    }
    s += w[1];
    const auto toks = tokenize(s);
    std::string no_space;
    for (char c : s)
      if (c != ' ') no_space += c;
    std::string joined;
    for (const auto& t : toks) {
      EXPECT_EQ(t.find(' '), std::string::npos);
      joined += t;
    }
    ASSERT_EQ(joined, no_space) << s;
    ASSERT_EQ(detokenize(toks), s) << s;
  }
}

}  // namespace
}  // namespace ladino
