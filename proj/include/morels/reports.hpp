#pragma once

// Corpus-level runs: the tuple file, the affix frequency table, the run-on
// agreement report, and the full link-building pass.  Work is partitioned per
// headword and merged in sorted key order, so output is byte-identical for
// any worker count.

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "morels/analyzer.hpp"
#include "morels/lexicon.hpp"
#include "morels/linker.hpp"
#include "morels/morphemes.hpp"
#include "morels/scoring.hpp"

namespace morels {

// Distinct headword surfaces, sorted; pseudo-senses do not add headwords of
// their own unless they are the only record for a word.
inline std::vector<std::string> corpus_headwords(const Lexicon& lex) {
  std::set<std::string> seen;
  std::vector<std::string> out;
  for (const Sense& s : lex.senses()) {
    std::string low = to_lower(s.headword);
    if (seen.insert(low).second) out.push_back(low);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace detail {

template <typename Fn>
void parallel_over_words(const std::vector<std::string>& words, int jobs, Fn&& fn) {
  if (jobs <= 1 || words.size() < 2) {
    for (std::size_t i = 0; i < words.size(); ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::size_t n = words.size();
  int workers = std::min<int>(jobs, static_cast<int>(n));
  for (int t = 0; t < workers; ++t) {
    pool.emplace_back([&, t]() {
      for (std::size_t i = static_cast<std::size_t>(t); i < n;
           i += static_cast<std::size_t>(workers))
        fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace detail

// One line per (derived sense, base sense) pair over the whole corpus:
//   derived, pos, derived_sense, base, pos, base_sense, score
// sorted by derived word, derived pos, derived sense, base pos, base word,
// base sense.
inline std::string emit_tuples(const Lexicon& lex, const MorphemeTable& table,
                               const ScoreConfig& cfg, const LinkWeights& w,
                               const AnalyzerOptions& opts = {}, int jobs = 1) {
  std::vector<std::string> words = corpus_headwords(lex);
  std::vector<std::string> blocks(words.size());

  detail::parallel_over_words(words, jobs, [&](std::size_t i) {
    std::vector<LinkTuple> tuples = build_links(words[i], lex, table, cfg, w, opts);
    std::sort(tuples.begin(), tuples.end(), [](const LinkTuple& a, const LinkTuple& b) {
      auto ka = std::make_tuple(a.derived.pos, a.derived.sense_no, a.base.pos, a.base.headword,
                                a.base.sense_no);
      auto kb = std::make_tuple(b.derived.pos, b.derived.sense_no, b.base.pos, b.base.headword,
                                b.base.sense_no);
      return ka < kb;
    });
    std::string block;
    for (const LinkTuple& t : tuples) {
      block += t.derived.headword;
      block += ", ";
      block += cat_lower(t.derived.pos);
      block += ", ";
      block += std::to_string(t.derived.sense_no);
      block += ", ";
      block += t.base.headword;
      block += ", ";
      block += cat_lower(t.base.pos);
      block += ", ";
      block += std::to_string(t.base.sense_no);
      block += ", ";
      block += std::to_string(t.score);
      block += '\n';
    }
    blocks[i] = std::move(block);
  });

  std::string out;
  for (const std::string& b : blocks) out += b;
  return out;
}

// Affix frequency table: headwords with at least one analysis using each
// morpheme, sorted descending by count, then by name.  Zero-count morphemes
// are omitted.
inline std::string affix_report(const Lexicon& lex, const MorphemeTable& table,
                                const AnalyzerOptions& opts = {}) {
  std::map<std::string, int> counts;
  for (const std::string& word : corpus_headwords(lex)) {
    std::set<std::string> used;
    for (const Analysis& a : analyze(word, table, lex, opts))
      for (const ChainStep& step : a.chain) used.insert(step.morpheme);
    for (const std::string& m : used) counts[m]++;
  }
  std::vector<std::pair<std::string, int>> rows(counts.begin(), counts.end());
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  std::size_t width = 0;
  for (const auto& [name, n] : rows) width = std::max(width, name.size());
  std::string out;
  for (const auto& [name, n] : rows) {
    out += name;
    out.append(width - name.size() + 2, ' ');
    out += std::to_string(n);
    out += '\n';
  }
  return out;
}

// A run-on whose printed attachment skips intermediate steps: the analyzer
// derives `derived` from `via`, while the dictionary attaches it to `base`.
struct FlatteningException {
  std::string derived;  // lowercased
  Cat pos = Cat::Noun;
  std::string base;  // lowercased
  std::string via;   // lowercased
};

inline std::vector<FlatteningException> load_flattening(std::string_view text) {
  std::vector<FlatteningException> out;
  for (const Record& r : parse_records(text)) {
    FlatteningException e;
    auto lemma = r.atom("Lemma");
    auto cat = r.atom("Cat");
    auto base = r.atom("Base");
    auto via = r.atom("Via");
    if (!lemma || !cat || !base || !via) continue;
    auto pos = cat_from_atom(*cat);
    if (!pos) continue;
    e.derived = to_lower(*lemma);
    e.pos = *pos;
    e.base = to_lower(*base);
    e.via = to_lower(*via);
    out.push_back(std::move(e));
  }
  return out;
}

struct AgreementReport {
  int matched = 0;
  int total = 0;
  int ambiguous = 0;

  double ratio() const { return total == 0 ? 0.0 : static_cast<double>(matched) / total; }

  std::string text() const {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", ratio());
    std::string out;
    out += "matched: " + std::to_string(matched) + "\n";
    out += "total: " + std::to_string(total) + "\n";
    out += "ratio: " + std::string(buf) + "\n";
    out += "ambiguous: " + std::to_string(ambiguous) + "\n";
    return out;
  }
};

// Agreement between the analyzer and the dictionary's own run-on data: a
// run-on (derived, pos, base) counts as matched when some analysis of the
// derived form recovers base (or, for a declared flattening exception, the
// exception's Via word).  Also counts derived forms with ambiguous analyses.
inline AgreementReport agreement(const Lexicon& lex, const MorphemeTable& table,
                                 const AnalyzerOptions& opts = {},
                                 const std::vector<FlatteningException>& exceptions = {}) {
  AgreementReport rep;
  std::set<std::string> ambiguous_words;
  for (const RunOnTriple& t : lex.gold_runons()) {
    rep.total++;
    std::string derived = to_lower(t.derived);
    std::string base = to_lower(t.base);
    std::set<std::string> bases;
    for (const Analysis& a : analyze(derived, table, lex, opts))
      bases.insert(to_lower(a.base_surface));
    if (bases.size() > 1) ambiguous_words.insert(derived);
    bool ok = bases.count(base) > 0;
    if (!ok) {
      for (const FlatteningException& e : exceptions) {
        if (e.derived == derived && e.pos == t.pos && e.base == base && bases.count(e.via)) {
          ok = true;
          break;
        }
      }
    }
    if (ok) rep.matched++;
  }
  rep.ambiguous = static_cast<int>(ambiguous_words.size());
  return rep;
}

// Full pass: link tuples for every headword, written into the lexicon, plus
// the run-on edges.
inline void build_graph(Lexicon& lex, const MorphemeTable& table, const ScoreConfig& cfg,
                        const LinkWeights& w, const AnalyzerOptions& opts = {}, int jobs = 1) {
  std::vector<std::string> words = corpus_headwords(lex);
  std::vector<std::vector<LinkTuple>> per_word(words.size());
  detail::parallel_over_words(words, jobs, [&](std::size_t i) {
    per_word[i] = build_links(words[i], lex, table, cfg, w, opts);
  });
  std::vector<LinkTuple> all;
  for (auto& v : per_word)
    for (LinkTuple& t : v) all.push_back(std::move(t));
  update_graph(lex, all);
  materialize_runons(lex);
}

}  // namespace morels
