// morels: derivational-relation discovery over attribute-value lexicons.
//
//   morels analyze <word>        print candidate analyses in bracket notation
//   morels score <word>          print per-sense certainty scores (--trace)
//   morels tuples                emit the (derived, base, score) tuple file
//   morels affixes               affix frequency table over the corpus
//   morels agreement             compare analyses against declared run-ons
//   morels build                 write link attributes back into the lexicon
//   morels paradigm <lemma> <name>   generate an inflectional paradigm
//
// Exit codes: 0 success, 1 usage, 2 parse error, 3 I/O error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "morels/analyzer.hpp"
#include "morels/lexicon.hpp"
#include "morels/linker.hpp"
#include "morels/morphemes.hpp"
#include "morels/record.hpp"
#include "morels/reports.hpp"
#include "morels/scoring.hpp"

namespace {

struct IoError : std::runtime_error {
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Options {
  std::string config_path;
  std::string lexicon_path;
  std::string morphemes_path;
  std::string paradigms_path;
  std::string weights_path;
  std::string flattening_path;
  std::string out_path;
  int max_depth = 3;
  int min_stem = 2;
  int jobs = 1;
};

// Values may come from a records-grammar config file; command-line flags win.
void apply_config_file(Options& o, const CLI::App& app) {
  if (o.config_path.empty()) return;
  morels::Record r = morels::parse_record(slurp(o.config_path));
  auto str = [&](const char* key, std::string& slot, const char* flag) {
    if (!app.count(flag))
      if (auto v = r.atom(key)) slot = *v;
  };
  str("Lexicon", o.lexicon_path, "--lexicon");
  str("Morphemes", o.morphemes_path, "--morphemes");
  str("Paradigms", o.paradigms_path, "--paradigms");
  str("Weights", o.weights_path, "--weights");
  str("Flattening", o.flattening_path, "--flattening");
  str("Out", o.out_path, "--out");
  auto num = [&](const char* key, int& slot, const char* flag) {
    if (!app.count(flag))
      if (auto v = r.atom(key)) {
        bool ok = false;
        int n = morels::detail::parse_int_atom(*v, ok);
        if (ok) slot = n;
      }
  };
  num("MaxDepth", o.max_depth, "--max-depth");
  num("MinStem", o.min_stem, "--min-stem");
  num("Jobs", o.jobs, "--jobs");
}

struct Session {
  morels::Lexicon lexicon;
  morels::MorphemeTable morphemes;
  morels::AnalyzerOptions analyzer;
  morels::ScoreConfig scoring;
  morels::LinkWeights weights;
};

Session open_session(const Options& o, bool need_morphemes = true) {
  Session s;
  if (o.lexicon_path.empty()) throw IoError("no lexicon file given (--lexicon)");
  s.lexicon = morels::load_lexicon(slurp(o.lexicon_path));
  if (need_morphemes) {
    if (o.morphemes_path.empty()) throw IoError("no morpheme file given (--morphemes)");
    s.morphemes = morels::load_morphemes(slurp(o.morphemes_path));
  }
  s.analyzer.max_depth = o.max_depth;
  s.analyzer.min_stem = static_cast<std::size_t>(o.min_stem);
  if (!o.weights_path.empty()) {
    morels::WeightsConfig wc = morels::load_weights(slurp(o.weights_path));
    s.weights = wc.weights;
    s.scoring = wc.scoring;
  }
  return s;
}

void write_out(const Options& o, const std::string& text) {
  if (o.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(o.out_path);
  if (!out) throw IoError("cannot write " + o.out_path);
  out << text;
}

int cmd_analyze(const Options& o, const std::string& word) {
  Session s = open_session(o);
  for (const morels::Analysis& a : morels::analyze(word, s.morphemes, s.lexicon, s.analyzer))
    std::cout << a.bracket_notation() << "\n";
  return 0;
}

int cmd_score(const Options& o, const std::string& word, bool trace) {
  Session s = open_session(o);
  for (const morels::Analysis& a : morels::analyze(word, s.morphemes, s.lexicon, s.analyzer)) {
    const morels::Morpheme* m = s.morphemes.find(a.outermost());
    for (const morels::Sense* sense : s.lexicon.lookup(word, m->cat)) {
      if (sense->sense_no == 0) continue;
      morels::ScoreTrace t =
          morels::score_analysis(a, *sense, s.lexicon, s.morphemes, s.scoring);
      std::cout << word << " (" << morels::cat_lower(sense->pos) << "," << sense->sense_no
                << ") " << a.bracket_notation() << " -> " << t.total << "\n";
      if (trace) std::cout << morels::serialize_record(t.to_record()) << "\n";
    }
  }
  return 0;
}

int cmd_tuples(const Options& o) {
  Session s = open_session(o);
  write_out(o, morels::emit_tuples(s.lexicon, s.morphemes, s.scoring, s.weights, s.analyzer,
                                   o.jobs));
  return 0;
}

int cmd_affixes(const Options& o) {
  Session s = open_session(o);
  write_out(o, morels::affix_report(s.lexicon, s.morphemes, s.analyzer));
  return 0;
}

int cmd_agreement(const Options& o) {
  Session s = open_session(o);
  std::vector<morels::FlatteningException> exceptions;
  if (!o.flattening_path.empty())
    exceptions = morels::load_flattening(slurp(o.flattening_path));
  morels::AgreementReport rep =
      morels::agreement(s.lexicon, s.morphemes, s.analyzer, exceptions);
  if (rep.total == 0) {
    std::cerr << "morels: the lexicon declares no run-ons\n";
    return 1;
  }
  std::cout << rep.text();
  return 0;
}

int cmd_build(const Options& o) {
  Session s = open_session(o);
  morels::build_graph(s.lexicon, s.morphemes, s.scoring, s.weights, s.analyzer, o.jobs);
  write_out(o, s.lexicon.to_text());
  return 0;
}

int cmd_paradigm(const Options& o, const std::string& lemma, const std::string& name) {
  if (o.paradigms_path.empty()) throw IoError("no paradigm file given (--paradigms)");
  morels::ParadigmTable pt = morels::load_paradigms(slurp(o.paradigms_path));
  const morels::Paradigm* p = pt.find(name);
  if (!p) {
    std::cerr << "morels: unknown paradigm '" << name << "'\n";
    return 1;
  }
  for (const auto& [slot, form] : morels::generate_paradigm(lemma, *p))
    std::cout << slot << " " << form << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"derivational-relation discovery over attribute-value lexicons"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand

  Options o;
  app.add_option("--config", o.config_path, "records-format config file (flags win)");
  app.add_option("--lexicon", o.lexicon_path, "lexicon file");
  app.add_option("--morphemes", o.morphemes_path, "morpheme table file");
  app.add_option("--paradigms", o.paradigms_path, "paradigm file");
  app.add_option("--weights", o.weights_path, "scoring/link weight file");
  app.add_option("--flattening", o.flattening_path, "flattening exception file");
  app.add_option("--max-depth", o.max_depth, "maximum affixes per analysis");
  app.add_option("--min-stem", o.min_stem, "minimum stem length");
  app.add_option("--jobs", o.jobs, "worker threads for corpus runs");
  app.add_option("--out", o.out_path, "output file (default stdout)");

  std::string word, lemma, paradigm_name;
  bool trace = false;

  CLI::App* analyze = app.add_subcommand("analyze", "print candidate analyses");
  analyze->add_option("word", word)->required();

  CLI::App* score = app.add_subcommand("score", "print per-sense certainty scores");
  score->add_option("word", word)->required();
  score->add_flag("--trace", trace, "print the full score trace");

  app.add_subcommand("tuples", "emit the tuple file over the whole corpus");
  app.add_subcommand("affixes", "affix frequency table");
  app.add_subcommand("agreement", "run-on agreement report");
  app.add_subcommand("build", "compute links and write the updated lexicon");

  CLI::App* paradigm = app.add_subcommand("paradigm", "generate an inflectional paradigm");
  paradigm->add_option("lemma", lemma)->required();
  paradigm->add_option("name", paradigm_name)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    apply_config_file(o, app);
    if (o.jobs < 1) o.jobs = 1;
    if (app.got_subcommand("analyze")) return cmd_analyze(o, word);
    if (app.got_subcommand("score")) return cmd_score(o, word, trace);
    if (app.got_subcommand("tuples")) return cmd_tuples(o);
    if (app.got_subcommand("affixes")) return cmd_affixes(o);
    if (app.got_subcommand("agreement")) return cmd_agreement(o);
    if (app.got_subcommand("build")) return cmd_build(o);
    if (app.got_subcommand("paradigm")) return cmd_paradigm(o, lemma, paradigm_name);
  } catch (const morels::ParseError& e) {
    std::cerr << "morels: " << e.what() << "\n";
    return 2;
  } catch (const morels::LexiconError& e) {
    std::cerr << "morels: " << e.what() << "\n";
    return 2;
  } catch (const morels::MorphemeError& e) {
    std::cerr << "morels: " << e.what() << "\n";
    return 2;
  } catch (const morels::ParadigmError& e) {
    std::cerr << "morels: " << e.what() << "\n";
    return 2;
  } catch (const morels::WeightsError& e) {
    std::cerr << "morels: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    std::cerr << "morels: " << e.what() << "\n";
    return 3;
  }
  return 1;
}
