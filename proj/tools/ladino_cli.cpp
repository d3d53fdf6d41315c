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

// ladino: command-line front end.
//
//   ladino translate --text "Me gusta leer."
//   ladino augment --spa x.spa --other x.eng --other-lang eng --out-prefix out/syn
//   ladino stats FILE...
//   ladino segment FILE
//   ladino eval --hyp out.lad --ref ref.lad
//   ladino split --src c.spa --tgt c.lad --test-size 500 --seed 42 --out-prefix out/c
//   ladino fetch --url URL --out-prefix out/opus
//   ladino serve --port 8080
//
// Exit status: 0 success, 1 data or processing error, 2 usage error.

#include <pthread.h>
#include <signal.h>

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "ladino.hpp"

namespace {

constexpr int kExitData = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DataOptions {
  std::string data_dir;
  std::string lexicon, phrases, ortho, paradigms, irregulars, closed_class, verb_suffixes;

  ladino::RulePaths paths() const {
    auto p = ladino::RulePaths::in(data_dir.empty() ? ladino::default_data_dir() : std::filesystem::path(data_dir));
    const auto over = [](std::filesystem::path& slot, const std::string& v) {
      if (!v.empty()) slot = v;
    };
    over(p.lexicon, lexicon);
    over(p.phrases, phrases);
    over(p.ortho, ortho);
    over(p.paradigms, paradigms);
    over(p.irregulars, irregulars);
    over(p.closed_class, closed_class);
    over(p.verb_suffixes, verb_suffixes);
    return p;
  }

  ladino::RuleData load() const {
    ladino::Diagnostics diag;
    auto data = ladino::load_rule_data(paths(), &diag);
    for (const auto& w : diag.warnings) std::cerr << "warning: " << w << '\n';
    return data;
  }
};

std::vector<std::string> input_lines(const std::optional<std::string>& text, const std::string& input) {
  if (text) return ladino::text::split_lines(*text);
  return ladino::text::read_lines(input);
}

void print_trace(std::size_t line, const ladino::TranslationResult& r) {
  for (const auto& e : r.trace) {
    std::cerr << line << '\t' << e.source << '\t' << ladino::to_string(e.mechanism) << '\t'
              << ladino::text::join(e.output, " ") << '\n';
  }
}

void print_stats(const std::vector<std::pair<std::string, ladino::CorpusStats>>& rows) {
  ladino::CorpusStats total;
  std::size_t width = 5;
  for (const auto& [name, st] : rows) width = std::max(width, name.size());
  std::printf("%-*s %12s %12s\n", static_cast<int>(width), "file", "sentences", "tokens");
  for (const auto& [name, st] : rows) {
    std::printf("%-*s %12zu %12zu\n", static_cast<int>(width), name.c_str(), st.sentence_count, st.token_count);
    total += st;
  }
  if (rows.size() > 1)
    std::printf("%-*s %12zu %12zu\n", static_cast<int>(width), "total", total.sentence_count, total.token_count);
  std::printf("\n");
  for (const auto& [name, st] : rows)
    std::printf("file=%s sentences=%zu tokens=%zu\n", name.c_str(), st.sentence_count, st.token_count);
  std::printf("total sentences=%zu tokens=%zu\n", total.sentence_count, total.token_count);
}

int serve(const ladino::RuleData& data, const ladino::ServiceConfig& config) {
  // Block termination signals in every thread; one thread waits for them.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  ladino::Service service(std::make_shared<const ladino::RuleData>(data), config);
  const int port = service.bind();
  std::cerr << "listening on http://" << config.host << ':' << port << '\n';
  std::thread waiter([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    service.stop();
  });
  service.run();
  waiter.join();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spanish to Judeo-Spanish rule-based translation and corpus tools", "ladino"};
  app.set_version_flag("--version", std::string("ladino ") + ladino::kVersion);
  app.require_subcommand(1);
  app.fallthrough();

  DataOptions data;
  auto* g = app.add_option_group("Rule data");
  g->add_option("--data-dir", data.data_dir, "Directory holding the rule-data files (default: $LADINO_DATA_DIR or the shipped data)");
  g->add_option("--lexicon", data.lexicon, "Spanish-Ladino dictionary (TSV)");
  g->add_option("--phrases", data.phrases, "Phrase corrections (TSV)");
  g->add_option("--ortho-rules", data.ortho, "Orthographic respelling rules (TSV)");
  g->add_option("--paradigms", data.paradigms, "Conjugation paradigm endings (TSV)");
  g->add_option("--irregulars", data.irregulars, "Irregular verb forms (TSV)");
  g->add_option("--closed-class", data.closed_class, "Spanish closed-class words (TSV)");
  g->add_option("--verb-suffixes", data.verb_suffixes, "Spanish verb suffixes (TSV)");

  const auto subcommand = [&](const char* name, const char* help) {
    auto* s = app.add_subcommand(name, help);
    s->set_version_flag("--version", std::string("ladino ") + ladino::kVersion);
    return s;
  };

  // translate
  std::optional<std::string> tr_text;
  std::string tr_input;
  bool tr_trace = false;
  auto* tr = subcommand("translate", "Translate Spanish text into Judeo-Spanish");
  auto* tr_text_opt = tr->add_option("--text", tr_text, "Text to translate");
  tr->add_option("--input", tr_input, "File with one sentence per line")->excludes(tr_text_opt);
  tr->add_flag("--trace", tr_trace, "Print per-token mechanisms to stderr");

  // augment
  std::string au_spa, au_other, au_lang, au_prefix;
  auto* au = subcommand("augment", "Create synthetic Ladino data from an other-Spanish bitext");
  au->add_option("--spa", au_spa, "Spanish side")->required();
  au->add_option("--other", au_other, "Other-language side")->required();
  au->add_option("--other-lang", au_lang, "Code of the other language")->required();
  au->add_option("--out-prefix", au_prefix, "Output prefix")->required();

  // stats
  std::vector<std::string> st_files;
  std::string st_lang = "es";
  auto* st = subcommand("stats", "Sentence and token counts");
  st->add_option("files", st_files, "One-sentence-per-line files")->required()->check(CLI::ExistingFile);
  st->add_option("--lang", st_lang, "Tokenizer language")->capture_default_str();

  // segment
  std::string sg_file, sg_abbr, sg_out;
  auto* sg = subcommand("segment", "Split running text into one sentence per line");
  sg->add_option("file", sg_file, "Input text")->required()->check(CLI::ExistingFile);
  sg->add_option("--abbreviations", sg_abbr, "Abbreviation list (default: the shipped one)");
  sg->add_option("-o,--output", sg_out, "Output file (default: stdout)");

  // eval
  std::string ev_hyp, ev_ref, ev_lang = "es";
  bool ev_lower = true;
  bool ev_smooth = false;
  auto* ev = subcommand("eval", "Corpus BLEU");
  ev->add_option("--hyp", ev_hyp, "Hypothesis file")->required();
  ev->add_option("--ref", ev_ref, "Reference file")->required();
  ev->add_flag("--lowercase,!--no-lowercase", ev_lower, "Lowercase before scoring (default on)");
  ev->add_flag("--smooth", ev_smooth, "Exponential smoothing of zero n-gram counts");
  ev->add_option("--lang", ev_lang, "Tokenizer language")->capture_default_str();

  // split
  std::string sp_src, sp_tgt, sp_src_lang = "spa", sp_tgt_lang = "lad", sp_prefix;
  std::size_t sp_size = 0;
  std::uint64_t sp_seed = 0;
  auto* sp = subcommand("split", "Seeded test/dev split of a parallel corpus");
  sp->add_option("--src", sp_src, "Source side")->required();
  sp->add_option("--tgt", sp_tgt, "Target side")->required();
  sp->add_option("--src-lang", sp_src_lang)->capture_default_str();
  sp->add_option("--tgt-lang", sp_tgt_lang)->capture_default_str();
  sp->add_option("--test-size", sp_size, "Pairs in the test set")->required();
  sp->add_option("--seed", sp_seed, "Shuffle seed")->required();
  sp->add_option("--out-prefix", sp_prefix, "Writes PREFIX.test.* and PREFIX.dev.*")->required();

  // fetch
  std::string fe_url, fe_tgt_url, fe_cache, fe_prefix, fe_src_lang, fe_tgt_lang;
  std::optional<std::size_t> fe_head;
  auto* fe = subcommand("fetch", "Download a Moses-format corpus into the cache");
  fe->add_option("--url", fe_url, "Zip archive, or the source side when --tgt-url is given")->required();
  fe->add_option("--tgt-url", fe_tgt_url, "Target side file");
  fe->add_option("--src-lang", fe_src_lang, "Source language code (default: from the file names)");
  fe->add_option("--tgt-lang", fe_tgt_lang, "Target language code");
  fe->add_option("--head", fe_head, "Keep only the first N pairs");
  fe->add_option("--cache-dir", fe_cache, "Cache directory (default: $LADINO_CACHE_DIR)");
  fe->add_option("--out-prefix", fe_prefix, "Also write the corpus as Moses files");

  // serve
  ladino::ServiceConfig sv_cfg = ladino::ServiceConfig::from_env();
  std::string sv_store;
  auto* sv = subcommand("serve", "Run the HTTP translation and contribution service");
  sv->add_option("--host", sv_cfg.host)->capture_default_str();
  sv->add_option("--port", sv_cfg.port, "0 picks a free port")->capture_default_str();
  sv->add_option("--store", sv_store, "Contribution store (JSON Lines)");
  sv->add_option("--max-length", sv_cfg.max_text_length, "Maximum /translate text length")->capture_default_str();
  sv->add_option("--cors-origin", sv_cfg.cors_origin, "Access-Control-Allow-Origin value; empty disables")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*tr) {
      if (!tr_text && tr_input.empty()) throw UsageError("translate needs --text or --input\n" + tr->help());
      const auto rules = data.load();
      const auto lines = input_lines(tr_text, tr_input);
      const auto results = ladino::translate_batch(lines, rules);
      int status = 0;
      for (std::size_t i = 0; i < results.size(); ++i) {
        std::cout << results[i].output << '\n';
        if (tr_trace) print_trace(i + 1, results[i]);
        if (results[i].error) {
          std::cerr << "error: line " << i + 1 << ": " << *results[i].error << '\n';
          status = kExitData;
        }
      }
      return status;
    }
    if (*au) {
      const auto rules = data.load();
      const auto spa = ladino::text::read_lines(au_spa);
      const auto other = ladino::text::read_lines(au_other);
      const auto result = ladino::augment(spa, other, au_lang, rules);
      const auto a = ladino::write_moses(result.other_lad, au_prefix);
      const auto b = ladino::write_moses(result.spa_lad, au_prefix);
      print_stats({{a.src.string(), ladino::stats(result.other_lad.sources())},
                   {a.tgt.string(), ladino::stats(result.other_lad.targets())},
                   {b.src.string(), ladino::stats(result.spa_lad.sources())},
                   {b.tgt.string(), ladino::stats(result.spa_lad.targets())}});
      if (result.failed_lines) {
        std::cerr << "error: " << result.failed_lines << " line(s) failed to translate\n";
        return kExitData;
      }
      return 0;
    }
    if (*st) {
      std::vector<std::pair<std::string, ladino::CorpusStats>> rows;
      for (const auto& f : st_files) rows.emplace_back(f, ladino::stats(ladino::text::read_lines(f), st_lang));
      print_stats(rows);
      return 0;
    }
    if (*sg) {
      const auto segmenter = sg_abbr.empty() ? ladino::SentenceSegmenter()
                                             : ladino::SentenceSegmenter::from_file(sg_abbr);
      const auto content = ladino::text::read_file(sg_file);
      if (!ladino::utf8::valid(content)) throw ladino::ParseError(sg_file, 0, "invalid UTF-8");
      const auto sentences = segmenter.segment(content);
      if (sg_out.empty()) {
        for (const auto& s : sentences) std::cout << s << '\n';
      } else {
        ladino::text::write_lines(sg_out, sentences);
      }
      return 0;
    }
    if (*ev) {
      ladino::BleuOptions opt;
      opt.lowercase = ev_lower;
      opt.smoothing = ev_smooth ? ladino::BleuSmoothing::kExp : ladino::BleuSmoothing::kNone;
      opt.lang = ev_lang;
      const auto score =
          ladino::corpus_bleu(ladino::text::read_lines(ev_hyp), ladino::text::read_lines(ev_ref), opt);
      std::cout << ladino::format_bleu(score) << '\n';
      return 0;
    }
    if (*sp) {
      const auto corpus = ladino::read_moses(sp_src, sp_tgt, sp_src_lang, sp_tgt_lang, "corpus");
      const auto split = ladino::split_devtest(corpus, sp_size, sp_seed);
      const auto t = ladino::write_moses(split.test, sp_prefix + ".test");
      const auto d = ladino::write_moses(split.dev, sp_prefix + ".dev");
      std::cout << "test=" << split.test.size() << ' ' << t.src.string() << ' ' << t.tgt.string() << '\n'
                << "dev=" << split.dev.size() << ' ' << d.src.string() << ' ' << d.tgt.string() << '\n';
      return 0;
    }
    if (*fe) {
      ladino::FetchOptions opt;
      opt.src_lang = fe_src_lang;
      opt.tgt_lang = fe_tgt_lang;
      opt.head = fe_head;
      ladino::DefaultTransport transport;
      const std::filesystem::path cache = fe_cache.empty() ? ladino::default_cache_dir() : std::filesystem::path(fe_cache);
      const auto corpus = fe_tgt_url.empty() ? ladino::fetch_corpus(fe_url, cache, opt, transport)
                                             : ladino::fetch_corpus(fe_url, fe_tgt_url, cache, opt, transport);
      std::cout << "name=" << corpus.name << " pair=" << corpus.src_lang << '-' << corpus.tgt_lang
                << " pairs=" << corpus.size() << '\n';
      if (!fe_prefix.empty()) {
        const auto p = ladino::write_moses(corpus, fe_prefix);
        std::cout << p.src.string() << ' ' << p.tgt.string() << '\n';
      }
      return 0;
    }
    if (*sv) {
      if (!sv_store.empty()) sv_cfg.store_path = sv_store;
      const auto rules = data.load();
      return serve(rules, sv_cfg);
    }
  } catch (const UsageError& e) {
    std::cerr << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}
