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


// Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any
// criterion fails. Tolerances are the constants below.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "ladino.hpp"
#include "oracles.hpp"
#include "support.hpp"

namespace {

using namespace ladino;
using testing::fixture;
using Clock = std::chrono::steady_clock;

constexpr double kGoldenMaxSeconds = 1.0;
constexpr double kAugmentMaxSeconds = 10.0;
constexpr double kHandBleu = 77.88;
constexpr double kHandBleuTolerance = 0.01;
constexpr double kOracleTolerance = 1e-9;
constexpr int kOracleCorpora = 20;
constexpr int kOrthoWords = 10000;
constexpr int kConcurrentContributions = 50;

/// Collects failure reasons for one criterion.
struct Check {
  std::vector<std::string> failures;
  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string shell_quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

/// Runs the CLI and returns its stdout, or nullopt on a non-zero exit.
std::optional<std::string> run_cli(const std::vector<std::string>& args) {
  std::string cmd = shell_quote(LADINO_CLI_PATH);
  for (const auto& a : args) cmd += " " + shell_quote(a);
  cmd += " 2>/dev/null";
  FILE* p = ::popen(cmd.c_str(), "r");
  if (!p) return std::nullopt;
  std::string out;
  char buf[4096];
  for (std::size_t n; (n = std::fread(buf, 1, sizeof buf, p)) > 0;) out.append(buf, n);
  const int st = ::pclose(p);
  if (!WIFEXITED(st) || WEXITSTATUS(st) != 0) return std::nullopt;
  return out;
}

void golden(Check& c) {
  const auto start = Clock::now();
  const RuleData data = load_rule_data(std::filesystem::path(LADINO_DEFAULT_DATA_DIR));
  const auto& spa = testing::golden_spanish();
  const auto& lad = testing::golden_ladino();
  c.expect(spa.size() == 5 && lad.size() == 5, "fixture must hold five rows");
  for (std::size_t i = 0; i < spa.size() && i < lad.size(); ++i) {
    const auto out = translate(spa[i], data).output;
    c.expect(out == lad[i], "'" + spa[i] + "' -> '" + out + "', expected '" + lad[i] + "'");
  }
  const double secs = seconds_since(start);
  c.expect(secs < kGoldenMaxSeconds, "took " + std::to_string(secs) + " s");
}

void conjugation_anchors(Check& c) {
  const auto& d = testing::shipped_data();
  const auto gizi = conjugate("gizar", finite(Tense::kPreterite, Person::k1, Number::kSingular), d.conjugation, d.ortho);
  const auto meldates =
      conjugate("meldar", finite(Tense::kPreterite, Person::k2, Number::kSingular), d.conjugation, d.ortho);
  c.expect(gizi == "gizi", "gizar PRETERITE 1SG -> " + gizi);
  c.expect(meldates == "meldates", "meldar PRETERITE 2SG -> " + meldates);
}

void phrase_anchors(Check& c) {
  const auto& rules = testing::shipped_data().phrases;
  using V = std::vector<std::string>;
  c.expect(apply_phrase_rules({"tengo", "ke", "gizar"}, rules) == V{"devo", "de", "gizar"}, "tengo ke -> devo de");
  c.expect(apply_phrase_rules({"ay", "ke", "pagar"}, rules) == V{"kale", "pagar"}, "ay ke -> kale");
  c.expect(apply_phrase_rules({"Ay", "ke", "pagar", "."}, rules) == V{"Kale", "pagar", "."}, "Ay ke -> Kale");
  const auto out = translate("Hay que pagar.", testing::shipped_data()).output;
  c.expect(out == "Kale pagar.", "'Hay que pagar.' -> '" + out + "'");
}

void bleu_protocol(Check& c) {
  const auto& lad = testing::golden_ladino();
  const double self = corpus_bleu(lad, lad).score;
  c.expect(self == 100.0, "BLEU(h, h) = " + std::to_string(self));

  const auto hand = corpus_bleu({"a b c d"}, {"a b c d e"});
  c.expect(std::abs(hand.score - kHandBleu) <= kHandBleuTolerance, "hand case scored " + std::to_string(hand.score));
  c.expect(std::abs(hand.brevity_penalty - std::exp(-0.25)) < 1e-12, "hand case BP");

  std::mt19937_64 rng(7);
  for (int seed = 1; seed <= kOracleCorpora; ++seed) {
    const auto rc = testing::random_corpus(static_cast<std::uint64_t>(seed));
    const double ours = corpus_bleu(rc.hyps, rc.refs).score;
    const double oracle = testing::oracle_bleu(rc.hyps, rc.refs);
    c.expect(std::abs(ours - oracle) <= kOracleTolerance,
             "seed " + std::to_string(seed) + ": " + std::to_string(ours) + " vs oracle " + std::to_string(oracle));

    auto upper = rc.hyps;
    for (auto& h : upper) h = utf8::upper(h);
    c.expect(corpus_bleu(upper, rc.refs).score == ours, "case invariance, seed " + std::to_string(seed));

    std::vector<std::size_t> order(rc.hyps.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<std::string> h, r;
    for (auto i : order) {
      h.push_back(rc.hyps[i]);
      r.push_back(rc.refs[i]);
    }
    c.expect(std::abs(corpus_bleu(h, r).score - ours) <= kOracleTolerance,
             "permutation invariance, seed " + std::to_string(seed));
  }
}

std::uint64_t augment_once(const std::filesystem::path& dir, Check& c) {
  const auto spa = text::read_lines(fixture("aug1000.spa"));
  const auto eng = text::read_lines(fixture("aug1000.eng"));
  const auto result = augment(spa, eng, "eng", testing::shipped_data());
  const auto prefix = (dir / "syn").string();
  const auto a = write_moses(result.other_lad, prefix);
  const auto b = write_moses(result.spa_lad, prefix);
  std::string all;
  for (const auto& p : {a.src, a.tgt, b.src, b.tgt}) {
    const auto lines = text::read_lines(p);
    c.expect(lines.size() == 1000, p.filename().string() + " has " + std::to_string(lines.size()) + " lines");
    all += text::read_file(p);
  }
  const auto lad = text::read_lines(b.tgt);
  const auto eng_out = text::read_lines(a.src);
  for (std::size_t i = 0; i < 900 && i < lad.size(); ++i) {
    char tag[8];
    std::snprintf(tag, sizeof tag, "zx%04zu", i);
    if (lad[i].find(tag) == std::string::npos || eng_out[i].find(tag) == std::string::npos) {
      c.expect(false, std::string("sentinel ") + tag + " misaligned");
      break;
    }
  }

  const auto merged = merge_spanish_sides({result.spa_lad, result.spa_lad});
  std::set<std::pair<std::string, std::string>> oracle(result.spa_lad.pairs.begin(), result.spa_lad.pairs.end());
  c.expect(merged.size() == oracle.size(),
           "merge kept " + std::to_string(merged.size()) + " pairs, set oracle has " + std::to_string(oracle.size()));
  c.expect(std::set(merged.pairs.begin(), merged.pairs.end()) == oracle, "merge differs from set oracle");
  std::vector<std::pair<std::string, std::string>> first_seen;
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& p : result.spa_lad.pairs)
    if (seen.insert(p).second) first_seen.push_back(p);
  c.expect(merged.pairs == first_seen, "merge does not keep first occurrences in order");
  all += text::join(merged.sources(), "\n") + text::join(merged.targets(), "\n");
  return testing::digest(all);
}

void augmentation(Check& c) {
  const auto start = Clock::now();
  testing::TempDir one, two;
  const auto h1 = augment_once(one.path(), c);
  const auto h2 = augment_once(two.path(), c);
  c.expect(h1 == h2, "two runs produced different outputs");
  const double secs = seconds_since(start);
  c.expect(secs < kAugmentMaxSeconds, "took " + std::to_string(secs) + " s");
}

void properties(Check& c) {
  const auto& d = testing::shipped_data();
  testing::SpanishWordGenerator gen(2024);
  int bad = 0;
  for (int i = 0; i < kOrthoWords; ++i) {
    const auto w = gen.next();
    const auto once = respell(w, d.ortho);
    const auto why = testing::forbidden_grapheme(utf8::lower(once));
    if (respell(once, d.ortho) != once || !why.empty() || once.empty()) {
      if (bad++ < 3) c.expect(false, "orthography: '" + w + "' -> '" + once + "' " + why);
    }
  }
  c.expect(bad == 0, std::to_string(bad) + " orthography violations");

  std::size_t cells = 0;
  for (VerbClass vc : kVerbClasses) {
    const std::string lemma = "pas" + std::string(infinitive_ending(vc));
    for (const auto& [cls, f] : ConjugationTable::required_cells()) {
      if (cls != vc) continue;
      ++cells;
      try {
        const auto form = conjugate(lemma, f, d.conjugation, d.ortho);
        const auto ending = d.conjugation.ending(vc, f);
        c.expect(ending && form == respell("pas" + std::string(*ending), d.ortho), lemma + " " + describe(f));
      } catch (const std::exception& e) {
        c.expect(false, lemma + " " + describe(f) + ": " + e.what());
      }
    }
  }
  c.expect(cells == 3 * (4 * 3 * 2 + 2), "grid has " + std::to_string(cells) + " cells");

  std::mt19937_64 rng(5);
  const char* extra[] = {".", "!", "?", "Sr.", "J.", "\"", "5", "\n\n", "etc."};
  for (int t = 0; t < 1000; ++t) {
    std::string input;
    for (std::size_t i = 0, n = rng() % 25; i < n; ++i) {
      std::string w = rng() % 3 ? gen.next() : std::string(extra[rng() % std::size(extra)]);
      if (rng() % 4 == 0) w += ".";
      input += w + " ";
    }
    const auto joined = text::join(segment_sentences(input), " ");
    if (joined != text::join(testing::whitespace_tokens(input), " ")) {
      c.expect(false, "segmentation lost characters in: " + input);
      break;
    }
  }

  for (int t = 0; t < 200; ++t) {
    const std::size_t n = rng() % 50;
    const std::size_t k = n ? rng() % (n + 1) : 0;
    std::vector<std::string> s, g;
    for (std::size_t i = 0; i < n; ++i) {
      s.push_back(std::to_string(i));
      g.push_back("t" + std::to_string(i));
    }
    const auto corpus = make_corpus("p", "spa", "lad", s, g);
    const std::uint64_t seed = rng();
    const auto a = split_devtest(corpus, k, seed);
    const auto b = split_devtest(corpus, k, seed);
    std::multiset<std::pair<std::string, std::string>> all(a.test.pairs.begin(), a.test.pairs.end());
    all.insert(a.dev.pairs.begin(), a.dev.pairs.end());
    std::set<std::pair<std::string, std::string>> test(a.test.pairs.begin(), a.test.pairs.end());
    bool disjoint = true;
    for (const auto& p : a.dev.pairs) disjoint &= test.count(p) == 0;
    const bool ok = a.test == b.test && a.dev == b.dev && a.test.size() == k && disjoint &&
                    all == std::multiset(corpus.pairs.begin(), corpus.pairs.end());
    if (!ok) {
      c.expect(false, "split property failed for n=" + std::to_string(n) + " k=" + std::to_string(k));
      break;
    }
  }
}

void service(Check& c) {
  testing::TempDir dir;
  const auto store = dir / "contributions.jsonl";
  ServiceConfig cfg;
  cfg.port = 0;
  cfg.store_path = store;
  Service svc(std::make_shared<RuleData>(testing::shipped_data()), cfg);
  const int port = svc.bind();
  std::thread server([&] { svc.run(); });
  svc.wait_until_ready();
  const auto client = [port] {
    httplib::Client cl("127.0.0.1", port);
    cl.set_read_timeout(10);
    return cl;
  };

  // Request/response parity with the CLI.
  const auto cli_out = run_cli({"translate", "--input", fixture("golden.spa").string()});
  c.expect(cli_out.has_value(), "CLI translate failed");
  const auto cli_lines = cli_out ? text::split_lines(*cli_out) : std::vector<std::string>{};
  const auto& spa = testing::golden_spanish();
  for (std::size_t i = 0; i < spa.size(); ++i) {
    const auto res = client().Post("/translate", nlohmann::json{{"text", spa[i]}}.dump(), "application/json");
    if (!res || res->status != 200) {
      c.expect(false, "/translate failed for '" + spa[i] + "'");
      continue;
    }
    const auto out = nlohmann::json::parse(res->body)["output"].get<std::string>();
    c.expect(i < cli_lines.size() && out == cli_lines[i], "service/CLI differ on '" + spa[i] + "': " + out);
  }

  // Concurrent contributions, then the append-only check.
  std::vector<int> statuses(kConcurrentContributions, 0);
  std::vector<std::thread> threads;
  for (int i = 0; i < kConcurrentContributions; ++i) {
    threads.emplace_back([&, i] {
      const nlohmann::json body = {{"source_lang", "spa"},     {"target_lang", "lad"},
                                   {"source_text", "s" + std::to_string(i)}, {"machine_output", "m"},
                                   {"corrected_text", "c" + std::to_string(i)}};
      const auto res = client().Post("/contribute", body.dump(), "application/json");
      statuses[i] = res ? res->status : -1;
    });
  }
  for (auto& t : threads) t.join();
  for (int st : statuses) c.expect(st == 201, "contribution returned " + std::to_string(st));

  const std::string content = text::read_file(store);
  std::set<std::uint64_t> ids;
  std::size_t records = 0;
  for (const auto& line : text::split_lines(content)) {
    try {
      ids.insert(record_from_json(nlohmann::json::parse(line)).id);
      ++records;
    } catch (const std::exception& e) {
      c.expect(false, std::string("unparseable record: ") + e.what());
    }
  }
  c.expect(records == 50 && ids.size() == 50,
           std::to_string(records) + " records, " + std::to_string(ids.size()) + " distinct ids");

  const auto exp = client().Get("/contributions/export");
  if (!exp || exp->status != 200) {
    c.expect(false, "export failed");
  } else {
    const auto body = nlohmann::json::parse(exp->body);
    const auto src = text::split_lines(body["source"].get<std::string>());
    const auto tgt = text::split_lines(body["target"].get<std::string>());
    c.expect(src.size() == 50 && tgt.size() == 50, "export sizes " + std::to_string(src.size()) + "/" +
                                                       std::to_string(tgt.size()));
    for (std::size_t i = 0; i < src.size() && i < tgt.size(); ++i)
      c.expect(src[i].substr(1) == tgt[i].substr(1), "export line " + std::to_string(i) + " misaligned");
  }

  const auto checksum = testing::digest(content);
  client().Get("/health");
  client().Post("/translate", nlohmann::json{{"text", "Me gusta leer."}}.dump(), "application/json");
  client().Post("/contribute", "{}", "application/json");
  client().Post("/contribute",
                nlohmann::json{{"source_lang", "spa"}, {"target_lang", "lad"}, {"source_text", "x"},
                               {"machine_output", "y"}, {"corrected_text", "z"}}
                    .dump(),
                "application/json");
  const std::string after = text::read_file(store);
  c.expect(after.size() > content.size() && testing::digest(after.substr(0, content.size())) == checksum,
           "store prefix changed");

  svc.stop();
  server.join();
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void(Check&)>>> criteria = {
      {"golden-translations", golden},
      {"conjugation-anchors", conjugation_anchors},
      {"phrase-anchors", phrase_anchors},
      {"bleu-protocol", bleu_protocol},
      {"augmentation-structure", augmentation},
      {"property-suites", properties},
      {"service", service},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Check c;
    try {
      fn(c);
    } catch (const std::exception& e) {
      c.failures.push_back(std::string("exception: ") + e.what());
    }
    std::cout << (c.failures.empty() ? "PASS " : "FAIL ") << name << '\n';
    for (const auto& f : c.failures) std::cout << "  " << f << '\n';
    failed += !c.failures.empty();
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
