#pragma once

// Certainty scoring for a candidate derivation.  The derived sense's semantic
// relations are walked against the morpheme's weighted template: a direct
// lexical match adds the slot's weight; a Hypernym slot that misses retries
// through the hypernym of the derived sense's own hypernym; any other slot
// retries by looking the hypothesized base up in the dictionary and comparing
// its semantic content.  A template relation that is absent from the derived
// sense altogether fails the whole analysis with a negative sentinel score.

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "morels/analyzer.hpp"
#include "morels/lexicon.hpp"
#include "morels/morphemes.hpp"
#include "morels/record.hpp"

namespace morels {

struct ScoreConfig {
  int fail_score = -4;
  bool fallback_uses_slot_weight = true;
  // Hypernym fallback looks the lemma up under the derived sense's category.
  bool restrict_hypernym_pos = true;
};

enum class StepOutcome { DirectMatch, HypernymFallback, BaseContentFallback, SlotMiss, RelationMissing };

inline const char* outcome_atom(StepOutcome o) {
  switch (o) {
    case StepOutcome::DirectMatch: return "DirectMatch";
    case StepOutcome::HypernymFallback: return "HypernymFallback";
    case StepOutcome::BaseContentFallback: return "BaseContentFallback";
    case StepOutcome::SlotMiss: return "SlotMiss";
    case StepOutcome::RelationMissing: return "RelationMissing";
  }
  return "SlotMiss";
}

struct ScoreStep {
  std::string path;  // e.g. "SubjOf.HasObj"
  StepOutcome outcome;
  int delta = 0;
};

struct ScoreTrace {
  int total = 0;
  std::vector<ScoreStep> steps;

  Record to_record() const {
    Record r;
    r.add("Total", Value::atom(std::to_string(total)));
    std::vector<Record> recs;
    for (const ScoreStep& s : steps) {
      Record sr;
      sr.add("Path", Value::atom(s.path));
      sr.add("Outcome", Value::atom(outcome_atom(s.outcome)));
      sr.add("Delta", Value::atom(std::to_string(s.delta)));
      recs.push_back(std::move(sr));
    }
    if (!recs.empty()) r.add("Step", Value::rec_list(std::move(recs)));
    return r;
  }
};

namespace detail {

inline std::string rec_lemma(const Record& rec) {
  return to_lower(rec.atom("Lemma").value_or(""));
}

// Acceptable fillers of a template slot, lowercased.  Empty means the slot is
// the BASE placeholder and must match the hypothesized base lemma.
inline std::set<std::string> slot_lemmas(const Record& slot) {
  std::set<std::string> out;
  if (const Value* v = slot.find("Lemmas"); v && v->is_atom_list())
    for (const auto& a : v->as_atom_list()) out.insert(to_lower(a));
  return out;
}

inline int slot_weight(const Record& slot) {
  bool ok = false;
  return parse_int_atom(slot.atom("Morels").value_or("0"), ok);
}

// Nested sub-relation slots of a template slot: every record-valued attribute
// other than the Lemmas/Morels metadata.
inline std::vector<std::pair<std::string, const Record*>> sub_slots(const Record& slot) {
  std::vector<std::pair<std::string, const Record*>> out;
  for (const auto& [name, value] : slot.attrs()) {
    if (name == "Lemmas" || name == "Morels") continue;
    for (const Record* r : value.records()) out.emplace_back(name, r);
  }
  return out;
}

// Relation records stored under `name`; atom and atom-list values are lifted
// into pseudo-records so that plain lemma fillers compare uniformly.
inline std::vector<Record> relation_records(const Record& relations, std::string_view name) {
  std::vector<Record> out;
  for (const Value* v : relations.get_all(name)) {
    if (v->is_atom()) {
      Record r;
      r.add("Lemma", Value::atom(v->as_atom()));
      out.push_back(std::move(r));
    } else if (v->is_atom_list()) {
      for (const auto& a : v->as_atom_list()) {
        Record r;
        r.add("Lemma", Value::atom(a));
        out.push_back(std::move(r));
      }
    } else {
      for (const Record* r : v->records()) out.push_back(*r);
    }
  }
  return out;
}

// Every lemma found in `relations` down to `max_depth` levels of relation
// nesting (the record directly under a relation attribute is depth 1).
inline void collect_lemmas(const Record& rec, int depth, int max_depth,
                           std::set<std::string>& out) {
  for (const auto& [name, value] : rec.attrs()) {
    if (name == "Lemma" && value.is_atom()) {
      out.insert(to_lower(value.as_atom()));
      continue;
    }
    if (value.is_atom_list()) {
      for (const auto& a : value.as_atom_list()) out.insert(to_lower(a));
      continue;
    }
    if ((value.is_rec() || value.is_rec_list()) && depth < max_depth)
      for (const Record* r : value.records()) collect_lemmas(*r, depth + 1, max_depth, out);
  }
}

inline std::set<std::string> relation_content(const Record& relations, int max_depth,
                                              std::string_view skip_attr = "") {
  std::set<std::string> out;
  for (const auto& [name, value] : relations.attrs()) {
    if (!skip_attr.empty() && name == skip_attr) continue;
    if (value.is_atom()) {
      out.insert(to_lower(value.as_atom()));
    } else if (value.is_atom_list()) {
      for (const auto& a : value.as_atom_list()) out.insert(to_lower(a));
    } else {
      for (const Record* r : value.records()) collect_lemmas(*r, 1, max_depth, out);
    }
  }
  return out;
}

}  // namespace detail

// True iff the derived relation record satisfies the slot: its Lemma is one
// of the slot's acceptable fillers (or equals the base lemma for a BASE
// placeholder slot), and every nested sub-slot matches recursively on the
// record's own sub-relations.
inline bool match_lexical(const Record& slot, const Record& derived_rel,
                          std::string_view base_lemma) {
  std::set<std::string> fillers = detail::slot_lemmas(slot);
  std::string lemma = detail::rec_lemma(derived_rel);
  if (fillers.empty()) {
    if (lemma != to_lower(base_lemma)) return false;
  } else if (!fillers.count(lemma)) {
    return false;
  }
  for (const auto& [name, sub] : detail::sub_slots(slot)) {
    bool any = false;
    for (const Record& sr : detail::relation_records(derived_rel, name)) {
      if (match_lexical(*sub, sr, base_lemma)) {
        any = true;
        break;
      }
    }
    if (!any) return false;
  }
  return true;
}

// Hypernym slots that miss directly: look the derived sense's hypernym lemma
// up in the dictionary and compare its own hypernyms (depth exactly 1) to the
// slot fillers.
inline bool hypernym_fallback(std::string_view derived_lemma,
                              const std::set<std::string>& slot_lemmas, const Lexicon& lex,
                              std::optional<Cat> pos = {}) {
  for (const std::string& h : lex.hypernyms_of(derived_lemma, pos))
    if (slot_lemmas.count(h)) return true;
  return false;
}

namespace detail {

inline bool slot_expected_in_content(const Record& slot, const std::vector<Record>& derived_recs,
                                     const std::set<std::string>& content,
                                     std::string_view base_lemma) {
  std::set<std::string> expected = slot_lemmas(slot);
  if (expected.empty()) {
    // BASE placeholder: the derived side supplies the lemma to look for;
    // failing that, the base lemma itself.
    for (const Record& r : derived_recs) {
      std::string l = rec_lemma(r);
      if (!l.empty()) expected.insert(l);
    }
    if (expected.empty()) expected.insert(to_lower(base_lemma));
  }
  bool found = false;
  for (const std::string& e : expected)
    if (content.count(e)) {
      found = true;
      break;
    }
  if (!found) return false;
  for (const auto& [name, sub] : sub_slots(slot)) {
    std::vector<Record> nested;
    for (const Record& r : derived_recs)
      for (Record& n : relation_records(r, name)) nested.push_back(std::move(n));
    if (!slot_expected_in_content(*sub, nested, content, base_lemma)) return false;
  }
  return true;
}

}  // namespace detail

// Non-Hypernym slots that miss directly: look the hypothesized base up in the
// dictionary and check that some one of its senses contains the derived
// relation's lemma (at relation-nesting depth <= 2), along with the expected
// lemma of every nested sub-slot.
inline bool base_content_fallback(std::string_view base_lemma, std::optional<Cat> base_pos,
                                  const Record& derived_rel, const Record& slot,
                                  const Lexicon& lex) {
  std::string wanted = detail::rec_lemma(derived_rel);
  if (wanted.empty()) return false;
  for (const Sense* bs : lex.lookup(base_lemma, base_pos)) {
    if (bs->sense_no == 0) continue;
    std::set<std::string> content = detail::relation_content(bs->relations, 2);
    if (!content.count(wanted)) continue;
    bool ok = true;
    for (const auto& [name, sub] : detail::sub_slots(slot)) {
      std::vector<Record> nested = detail::relation_records(derived_rel, name);
      if (!detail::slot_expected_in_content(*sub, nested, content, base_lemma)) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

namespace detail {

// Emits DirectMatch (or BaseContentFallback) steps for a slot and all its
// nested sub-slots, each contributing its own weight.
inline void emit_slot_steps(const Record& slot, const std::string& path, StepOutcome outcome,
                            bool full_weight, ScoreTrace& trace) {
  int w = slot_weight(slot);
  trace.steps.push_back(ScoreStep{path, outcome, full_weight ? w : 1});
  for (const auto& [name, sub] : sub_slots(slot))
    emit_slot_steps(*sub, path + "." + name, outcome, full_weight, trace);
}

}  // namespace detail

// Scores one (analysis, derived sense) pair against the template of the
// analysis's outermost morpheme.
inline ScoreTrace score_analysis(const Analysis& a, const Sense& derived, const Lexicon& lex,
                                 const MorphemeTable& table, const ScoreConfig& cfg = {}) {
  ScoreTrace trace;
  const Morpheme* m = table.find(a.outermost());
  if (m == nullptr) return trace;
  const std::string& base = a.base_surface;

  for (const auto& [rel_name, value] : m->semrel_template.attrs()) {
    for (const Record* slot : value.records()) {
      std::vector<Record> derived_recs = detail::relation_records(derived.relations, rel_name);
      if (derived_recs.empty()) {
        // Semantic relation mismatch: the whole analysis fails.
        trace.steps.push_back(ScoreStep{rel_name, StepOutcome::RelationMissing, cfg.fail_score});
        trace.total = cfg.fail_score;
        return trace;
      }

      bool direct = false;
      for (const Record& rec : derived_recs) {
        if (match_lexical(*slot, rec, base)) {
          direct = true;
          break;
        }
      }
      if (direct) {
        detail::emit_slot_steps(*slot, rel_name, StepOutcome::DirectMatch, true, trace);
        continue;
      }

      if (rel_name == "Hypernym") {
        std::set<std::string> fillers = detail::slot_lemmas(*slot);
        std::optional<Cat> pos;
        if (cfg.restrict_hypernym_pos) pos = derived.pos;
        bool hit = false;
        for (const Record& rec : derived_recs) {
          if (hypernym_fallback(detail::rec_lemma(rec), fillers, lex, pos)) {
            hit = true;
            break;
          }
        }
        if (hit) {
          int w = detail::slot_weight(*slot);
          trace.steps.push_back(ScoreStep{rel_name, StepOutcome::HypernymFallback,
                                          cfg.fallback_uses_slot_weight ? w : 1});
        } else {
          trace.steps.push_back(ScoreStep{rel_name, StepOutcome::SlotMiss, 0});
        }
        continue;
      }

      bool hit = false;
      for (const Record& rec : derived_recs) {
        if (base_content_fallback(base, a.base_pos, rec, *slot, lex)) {
          hit = true;
          break;
        }
      }
      if (hit) {
        detail::emit_slot_steps(*slot, rel_name, StepOutcome::BaseContentFallback,
                                cfg.fallback_uses_slot_weight, trace);
      } else {
        trace.steps.push_back(ScoreStep{rel_name, StepOutcome::SlotMiss, 0});
      }
    }
  }

  int total = 0;
  for (const ScoreStep& s : trace.steps) total += s.delta;
  trace.total = total;
  return trace;
}

}  // namespace morels
