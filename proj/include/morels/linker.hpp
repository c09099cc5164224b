#pragma once

// Pairwise sense linking for derivations that pass the scoring gate, symmetric
// link-attribute updates, and derivational-graph queries.  Derivations whose
// gate is non-positive are still recorded, as a single negative word-level
// link between the two headwords (pseudo-sense 0) rather than between any of
// their senses.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "morels/analyzer.hpp"
#include "morels/lexicon.hpp"
#include "morels/morphemes.hpp"
#include "morels/scoring.hpp"

namespace morels {

struct LinkWeights {
  int prep_match = 2;
  int prep_miss = -1;
  int domain_match = 5;
  int domain_miss = -5;
  int hyp_content_match = 5;
};

namespace detail {

inline std::set<std::string> domain_lemmas(const Sense& s) {
  std::set<std::string> out;
  for (const Record& r : relation_records(s.relations, "Domain")) {
    std::string l = rec_lemma(r);
    if (!l.empty()) out.insert(l);
  }
  return out;
}

}  // namespace detail

// Similarity between one derived sense and one base sense:
//   - subcategorized prepositions of the derived sense score prep_match when
//     the base sense shares them, prep_miss otherwise;
//   - Domain lemmas are compared the same way, but only when both senses
//     carry at least one Domain;
//   - each derived relation lemma equal to a base Hypernym lemma, or to a
//     hypernym (depth 1) of one, scores hyp_content_match.
inline int link_senses(const Sense& derived, const Sense& base, const LinkWeights& w,
                       const Lexicon& lex) {
  int score = 0;
  for (const std::string& p : derived.preps)
    score += base.preps.count(p) ? w.prep_match : w.prep_miss;

  std::set<std::string> ddom = detail::domain_lemmas(derived);
  std::set<std::string> bdom = detail::domain_lemmas(base);
  if (!ddom.empty() && !bdom.empty())
    for (const std::string& d : ddom) score += bdom.count(d) ? w.domain_match : w.domain_miss;

  std::set<std::string> targets;
  for (const Record& r : detail::relation_records(base.relations, "Hypernym"))
    detail::collect_lemmas(r, 1, 8, targets);
  for (const std::string& h : std::set<std::string>(targets))
    for (const std::string& hh : lex.hypernyms_of(h)) targets.insert(hh);

  std::set<std::string> derived_lemmas = detail::relation_content(derived.relations, 8, "Domain");
  for (const std::string& l : derived_lemmas)
    if (targets.count(l)) score += w.hyp_content_match;
  return score;
}

struct LinkTuple {
  SenseKey derived;
  SenseKey base;
  std::string attr;
  std::string attr_of;
  int score = 0;
  bool gate_positive = false;
};

// All link tuples for one surface word.  Analyses whose gate score is
// positive produce one tuple per base sense carrying the pairwise link score;
// analyses that fail the gate produce tuples carrying the (non-positive) gate
// score itself, marking the derivation dubious but recorded.
inline std::vector<LinkTuple> build_links(std::string_view word, const Lexicon& lex,
                                          const MorphemeTable& table, const ScoreConfig& cfg,
                                          const LinkWeights& w, const AnalyzerOptions& opts = {}) {
  std::vector<LinkTuple> out;
  for (const Analysis& a : analyze(word, table, lex, opts)) {
    const Morpheme* m = table.find(a.outermost());
    if (!m) continue;
    for (const Sense* ds : lex.lookup(word, m->cat)) {
      if (ds->sense_no == 0) continue;
      int gate = score_analysis(a, *ds, lex, table, cfg).total;
      for (const Sense* bs : lex.lookup(a.base_surface, a.base_pos)) {
        if (bs->sense_no == 0) continue;
        LinkTuple t;
        t.derived = ds->key();
        t.base = bs->key();
        t.attr = m->attr;
        t.attr_of = m->attr_of;
        t.gate_positive = gate > 0;
        t.score = t.gate_positive ? link_senses(*ds, *bs, w, lex) : gate;
        out.push_back(std::move(t));
      }
    }
  }
  // Two analyses can propose the same (derived, base, attr) edge; keep the
  // first occurrence.
  std::vector<LinkTuple> uniq;
  std::set<std::tuple<SenseKey, SenseKey, std::string>> seen;
  for (LinkTuple& t : out)
    if (seen.insert({t.derived, t.base, t.attr}).second) uniq.push_back(std::move(t));
  return uniq;
}

// Writes link tuples into the lexicon as symmetric attribute pairs: the
// forward attribute goes on the base sense, the *Of attribute on the derived
// sense, both carrying the same score.  Positive-gate links are stored only
// when their pairwise score is positive; dubious derivations collapse to one
// word-level link pair between pseudo-senses 0.
inline void update_graph(Lexicon& lex, const std::vector<LinkTuple>& tuples) {
  struct WordEdge {
    std::string derived_hw;
    Cat derived_pos;
    std::string base_hw;
    Cat base_pos;
    std::string attr_of;
    int score;
  };
  std::map<std::tuple<std::string, Cat, std::string, Cat, std::string>, WordEdge> dubious;

  for (const LinkTuple& t : tuples) {
    const Sense* ds = lex.find(t.derived);
    const Sense* bs = lex.find(t.base);
    if (!ds || !bs) throw LexiconError(LexiconErrorKind::UnknownSense, "stale link tuple");
    if (t.gate_positive) {
      if (t.score <= 0) continue;
      Link fwd{t.attr, ds->headword, ds->pos, ds->sense_no, t.score};
      Link back{t.attr_of, bs->headword, bs->pos, bs->sense_no, t.score};
      lex.apply_link(t.base, t.attr, fwd);
      lex.apply_link(t.derived, t.attr_of, back);
    } else {
      auto key = std::make_tuple(t.derived.headword, ds->pos, t.base.headword, bs->pos, t.attr);
      auto it = dubious.find(key);
      if (it == dubious.end()) {
        dubious.emplace(key, WordEdge{ds->headword, ds->pos, bs->headword, bs->pos, t.attr_of,
                                      t.score});
      } else {
        it->second.score = std::max(it->second.score, t.score);
      }
    }
  }

  for (const auto& [key, e] : dubious) {
    SenseKey bk = lex.ensure_pseudo_sense(e.base_hw, e.base_pos);
    SenseKey dk = lex.ensure_pseudo_sense(e.derived_hw, e.derived_pos);
    lex.apply_link(bk, std::get<4>(key), Link{std::get<4>(key), e.derived_hw, e.derived_pos, 0,
                                              e.score});
    lex.apply_link(dk, e.attr_of, Link{e.attr_of, e.base_hw, e.base_pos, 0, e.score});
  }
}

// Turns the run-on declarations into explicit word-level Deriv/DerivOf edges
// so that undefined derived forms participate in the graph.
inline void materialize_runons(Lexicon& lex) {
  struct Edge {
    std::string derived;
    Cat dpos;
    std::string base;
    Cat bpos;
  };
  std::vector<Edge> edges;
  for (const Sense& s : lex.senses())
    for (const Record& ro : s.runon_decls) {
      auto lemma = ro.atom("Lemma");
      auto cat = ro.atom("Cat");
      if (!lemma || !cat) continue;
      auto pos = cat_from_atom(*cat);
      if (!pos) continue;
      edges.push_back(Edge{*lemma, *pos, s.headword, s.pos});
    }
  for (const Edge& e : edges) {
    SenseKey bk = lex.ensure_pseudo_sense(e.base, e.bpos);
    SenseKey dk = lex.ensure_pseudo_sense(e.derived, e.dpos);
    lex.apply_link(bk, "Deriv", Link{"Deriv", e.derived, e.dpos, 0, 0});
    lex.apply_link(dk, "DerivOf", Link{"DerivOf", e.base, e.bpos, 0, 0});
  }
}

inline bool is_of_attr(std::string_view name) {
  return name.size() > 2 && name.substr(name.size() - 2) == "Of";
}

// Lemmas one *Of edge away (the base forms of `lemma`).
inline std::set<std::string> bases_of(const Lexicon& lex, std::string_view lemma) {
  std::set<std::string> out;
  for (const Sense* s : lex.lookup(lemma))
    for (const auto& [attr, value] : s->links.attrs()) {
      if (!is_of_attr(attr)) continue;
      for (const Record* r : value.records()) {
        auto l = r->atom("Lemma");
        if (l) out.insert(to_lower(*l));
      }
    }
  return out;
}

// Lemmas one forward edge away (the immediate derivatives of `lemma`).
inline std::set<std::string> derivatives_of(const Lexicon& lex, std::string_view lemma) {
  std::set<std::string> out;
  for (const Sense* s : lex.lookup(lemma))
    for (const auto& [attr, value] : s->links.attrs()) {
      if (is_of_attr(attr)) continue;
      for (const Record* r : value.records()) {
        auto l = r->atom("Lemma");
        if (l) out.insert(to_lower(*l));
      }
    }
  return out;
}

// Transitive closure over the symmetric closure of derivational edges,
// including the word itself.
inline std::set<std::string> derivational_family(const Lexicon& lex, std::string_view lemma) {
  std::set<std::string> family;
  std::vector<std::string> frontier{to_lower(lemma)};
  family.insert(frontier.front());
  while (!frontier.empty()) {
    std::string cur = std::move(frontier.back());
    frontier.pop_back();
    std::set<std::string> next = bases_of(lex, cur);
    std::set<std::string> fwd = derivatives_of(lex, cur);
    next.insert(fwd.begin(), fwd.end());
    for (const std::string& n : next)
      if (family.insert(n).second) frontier.push_back(n);
  }
  return family;
}

// ---------------------------------------------------------------------------
// Weight / scoring configuration file

struct WeightsConfig {
  LinkWeights weights;
  ScoreConfig scoring;
};

struct WeightsError : std::runtime_error {
  explicit WeightsError(const std::string& what) : std::runtime_error(what) {}
};

inline WeightsConfig load_weights(std::string_view text) {
  WeightsConfig c;
  Record r = parse_record(text);
  auto get = [&](const char* name, int& slot) {
    if (auto a = r.atom(name)) {
      bool ok = false;
      int v = detail::parse_int_atom(*a, ok);
      if (ok) slot = v;
    }
  };
  get("PrepMatch", c.weights.prep_match);
  get("PrepMiss", c.weights.prep_miss);
  get("DomainMatch", c.weights.domain_match);
  get("DomainMiss", c.weights.domain_miss);
  get("HypContentMatch", c.weights.hyp_content_match);
  get("FailScore", c.scoring.fail_score);
  if (auto a = r.atom("FallbackUsesSlotWeight"))
    c.scoring.fallback_uses_slot_weight = (*a == "true" || *a == "1");
  if (auto a = r.atom("RestrictHypernymPos"))
    c.scoring.restrict_hypernym_pos = (*a == "true" || *a == "1");
  if (!(c.weights.prep_match > 0 && c.weights.prep_miss < 0))
    throw WeightsError("PrepMatch must be positive and PrepMiss negative");
  if (!(c.weights.domain_match > 0 && c.weights.domain_miss < 0))
    throw WeightsError("DomainMatch must be positive and DomainMiss negative");
  if (c.weights.hyp_content_match <= 0)
    throw WeightsError("HypContentMatch must be positive");
  if (c.scoring.fail_score >= 0) throw WeightsError("FailScore must be negative");
  return c;
}

}  // namespace morels
