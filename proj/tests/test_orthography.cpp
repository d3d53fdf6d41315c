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

#include "ladino/orthography.hpp"
#include "ladino/utf8.hpp"
#include "oracles.hpp"
#include "support.hpp"

namespace ladino {
namespace {

TEST(Respell, SpecExamples) {
  EXPECT_EQ(respell("turco"), "turko");
  EXPECT_EQ(respell("despu\xC3\xA9s"), "despues");
  EXPECT_EQ(respell("que"), "ke");
  EXPECT_EQ(respell("kafe"), "kafe");
  EXPECT_EQ(respell("ma\xC3\xB1" "ana"), "manyana");
  EXPECT_EQ(respell("hijo"), "ijo");
  EXPECT_EQ(respell("y"), "i");
}

// Expected values worked out by hand from the shipped rule list.
TEST(Respell, ShippedRulesOnCoreVocabulary) {
  EXPECT_EQ(respell("cocina"), "kosina");     // c+o -> k, c+i -> s
  EXPECT_EQ(respell("caf\xC3\xA9"), "kafe");  // accent fold, c+a -> k
  EXPECT_EQ(respell("hija"), "ija");
  EXPECT_EQ(respell("calle"), "kaye");        // ll -> y
  EXPECT_EQ(respell("guerra"), "gerra");
  EXPECT_EQ(respell("guitarra"), "gitarra");
  EXPECT_EQ(respell("libro"), "libro");       // b not intervocalic
  EXPECT_EQ(respell("saber"), "saver");
  EXPECT_EQ(respell("bueno"), "bueno");       // word-initial b kept
  EXPECT_EQ(respell("queso"), "keso");
  EXPECT_EQ(respell("Iraq"), "Irak");
  EXPECT_EQ(respell("hoy"), "oy");            // y only changes as a standalone word
}

TEST(Respell, CasingIsRestoredPositionally) {
  EXPECT_EQ(respell("Hijo"), "Ijo");
  EXPECT_EQ(respell("Que"), "Ke");
  EXPECT_EQ(respell("\xC3\x81rbol"), "Arbol");
  EXPECT_EQ(respell("QUESO"), "KESO");
  EXPECT_EQ(respell("Y"), "I");
}

TEST(Respell, NeverEmptiesAWord) {
  EXPECT_EQ(respell("h"), "h");
  EXPECT_EQ(respell("H"), "H");
  EXPECT_EQ(respell(""), "");
}

TEST(Respell, RuleOrderAndRepetition) {
  // One rule runs to completion before the next one starts.
  const auto rules = parse_ortho_rules("a\tb\nb\tc\n", "t");
  EXPECT_EQ(respell("aaa", rules), "ccc");
  // A rule re-applies to its own output within a pass only where the
  // context allows it.
  const auto initial = parse_ortho_rules("x\t\tword-initial\n", "t");
  EXPECT_EQ(respell("xxa", initial), "a");
  EXPECT_EQ(respell("axx", initial), "axx");
}

TEST(Respell, IntervocalicRuleCanBeToggledOff) {
  const auto without_bv = default_rules().without("b", RuleContext::kIntervocalic);
  EXPECT_EQ(without_bv.size() + 1, default_rules().size());
  EXPECT_EQ(respell("saber", without_bv), "saber");
  EXPECT_EQ(respell("saber"), "saver");
}

TEST(OrthoRules, ShippedFileMatchesEmbeddedDefaults) {
  const auto file = load_ortho_rules(std::filesystem::path(LADINO_DEFAULT_DATA_DIR) / "ortho_rules.tsv");
  EXPECT_EQ(file, default_rules());
}

TEST(OrthoRules, SerializeRoundTrip) {
  EXPECT_EQ(parse_ortho_rules(serialize(default_rules()), "rt"), default_rules());
}

TEST(OrthoRules, ParseErrorsCarryLineNumbers) {
  try {
    parse_ortho_rules("a\tb\nc\td\tbefore-consonant\n", "rules.tsv");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_NE(std::string(e.what()).find("before-consonant"), std::string::npos);
  }
  EXPECT_THROW(parse_ortho_rules("abc\n", "r"), ParseError);
  EXPECT_THROW(parse_ortho_rules("\tx\n", "r"), ParseError);
}

TEST(OrthographyViolation, FlagsEachForbiddenGrapheme) {
  EXPECT_FALSE(orthography_violation("kafe"));
  EXPECT_TRUE(orthography_violation("queso"));
  EXPECT_TRUE(orthography_violation("ni\xC3\xB1o"));
  EXPECT_TRUE(orthography_violation("calle"));
  EXPECT_TRUE(orthography_violation("casa"));
  EXPECT_TRUE(orthography_violation("caf\xC3\xA9"));
  EXPECT_TRUE(orthography_violation("hijo"));
  EXPECT_FALSE(orthography_violation("sinko"));
}

// Property suite over 10,000 generated words.
class RespellProperty : public ::testing::Test {
 protected:
  static constexpr int kWords = 10000;
};

TEST_F(RespellProperty, IdempotentOverRandomWords) {
  testing::SpanishWordGenerator gen(20240601);
  for (int i = 0; i < kWords; ++i) {
    const auto w = gen.next();
    const auto once = respell(w);
    ASSERT_EQ(respell(once), once) << w;
  }
}

TEST_F(RespellProperty, CharacterSetPostcondition) {
  testing::SpanishWordGenerator gen(20240602);
  for (int i = 0; i < kWords; ++i) {
    const auto w = gen.next();
    const auto out = respell(w);
    ASSERT_EQ(testing::forbidden_grapheme(utf8::lower(out)), "") << w << " -> " << out;
    ASSERT_FALSE(orthography_violation(out)) << w << " -> " << out;
  }
}

TEST_F(RespellProperty, NonEmptySingleTokenAndFirstLetterCase) {
  testing::SpanishWordGenerator gen(20240603);
  for (int i = 0; i < kWords; ++i) {
    const auto w = gen.next();
    const auto out = respell(w);
    ASSERT_FALSE(out.empty()) << w;
    ASSERT_EQ(out.find_first_of(" \t\n"), std::string::npos) << w;
    // An initial h may be deleted, so compare against the first letter that
    // survives: the output's first letter is uppercase iff the input's was.
    ASSERT_EQ(utf8::starts_upper(out), utf8::starts_upper(w)) << w << " -> " << out;
  }
}

}  // namespace
}  // namespace ladino
