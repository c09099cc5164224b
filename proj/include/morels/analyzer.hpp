#pragma once

// Candidate morphological analyses of surface words.  Affixes are stripped
// per the morpheme table; a chain is accepted when every adjacent pair
// respects continuation classes and the innermost base surface is a lexicon
// headword of the right category.  Also: inflectional paradigm generation
// from paradigm records.

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "morels/lexicon.hpp"
#include "morels/morphemes.hpp"
#include "morels/record.hpp"

namespace morels {

struct ChainStep {
  std::string morpheme;  // morpheme name
  AllomorphRule rule;

  auto operator<=>(const ChainStep&) const = default;
};

// One candidate segmentation; chain is ordered outermost-first.
struct Analysis {
  std::string surface;
  std::string base_surface;
  Cat base_pos = Cat::Noun;
  std::vector<ChainStep> chain;
  int depth = 1;

  const std::string& outermost() const { return chain.front().morpheme; }

  // Bracket notation, e.g. [[geography_Noun]+er].
  std::string bracket_notation() const {
    std::string out = "[[" + base_surface + "_" + cat_atom(base_pos) + "]";
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) out += "+" + it->rule.affix;
    out += "]";
    return out;
  }
};

struct AnalyzerOptions {
  int max_depth = 3;
  // Minimum stem length (before the replacement is attached); suppresses
  // pathological strips such as "a" from "aer".
  std::size_t min_stem = 2;
};

struct ReplacementMismatch : std::runtime_error {
  explicit ReplacementMismatch(const std::string& what) : std::runtime_error(what) {}
};

// Inverse of analysis: applies each chain rule innermost-first to rebuild the
// surface word from the base.
inline std::string synthesize(std::string_view base, const std::vector<ChainStep>& chain) {
  std::string form(base);
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    const AllomorphRule& r = it->rule;
    if (r.side == Side::Suffix) {
      if (form.size() < r.replacement.size() ||
          form.substr(form.size() - r.replacement.size()) != r.replacement)
        throw ReplacementMismatch("'" + form + "' does not end with '" + r.replacement + "'");
      form.erase(form.size() - r.replacement.size());
      form += r.affix;
    } else {
      if (form.substr(0, r.replacement.size()) != r.replacement)
        throw ReplacementMismatch("'" + form + "' does not start with '" + r.replacement + "'");
      form.erase(0, r.replacement.size());
      form = r.affix + form;
    }
  }
  return form;
}

namespace detail {

inline void analyze_rec(const std::string& surface, const MorphemeTable& table,
                        const Lexicon& lex, const AnalyzerOptions& opts, int depth,
                        std::vector<ChainStep>& chain, const Morpheme* outer,
                        std::vector<Analysis>& out) {
  for (const auto& [m, rule] : morphemes_for_affix(table, surface)) {
    if (stem_length(surface, rule) < opts.min_stem) continue;
    if (outer == nullptr) {
      // The outermost morpheme occupies word-final (or word-initial)
      // position, so it must allow None.
      if (!m->allows_final()) continue;
    } else {
      if (!m->allows_next(outer->name)) continue;
      if (outer->pcat != m->cat) continue;
    }
    std::optional<std::string> base = strip_affix(surface, rule);
    if (!base || *base == surface) continue;
    chain.push_back(ChainStep{m->name, rule});
    if (lex.contains(*base, m->pcat)) {
      Analysis a;
      a.base_surface = *base;
      a.base_pos = m->pcat;
      a.chain = chain;
      a.depth = depth;
      out.push_back(std::move(a));
    }
    if (depth < opts.max_depth) analyze_rec(*base, table, lex, opts, depth + 1, chain, m, out);
    chain.pop_back();
  }
}

}  // namespace detail

// Every candidate analysis whose base surface is a lexicon headword with the
// morpheme's input category.  The word itself is never returned as a
// zero-affix analysis; monomorphemic words yield an empty sequence.
inline std::vector<Analysis> analyze(std::string_view word, const MorphemeTable& table,
                                     const Lexicon& lex, const AnalyzerOptions& opts = {}) {
  std::vector<Analysis> out;
  if (word.empty()) return out;
  std::vector<ChainStep> chain;
  std::string w(word);
  detail::analyze_rec(w, table, lex, opts, 1, chain, nullptr, out);
  for (Analysis& a : out) a.surface = w;

  std::sort(out.begin(), out.end(), [](const Analysis& a, const Analysis& b) {
    if (a.depth != b.depth) return a.depth < b.depth;
    if (a.base_surface != b.base_surface) return a.base_surface < b.base_surface;
    return a.chain < b.chain;
  });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const Analysis& a, const Analysis& b) {
                          return a.base_surface == b.base_surface && a.base_pos == b.base_pos &&
                                 a.chain == b.chain;
                        }),
            out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Inflectional paradigms

struct ParadigmSlot {
  std::string name;
  std::vector<AllomorphRule> rules;     // lemma = stem + replacement, form = stem + affix
  std::vector<std::string> forms;       // explicit forms; override rule-generated ones
};

struct Paradigm {
  std::string name;
  std::vector<ParadigmSlot> slots;
};

struct ParadigmError : std::runtime_error {
  explicit ParadigmError(const std::string& what) : std::runtime_error(what) {}
};

class ParadigmTable {
public:
  ParadigmTable() = default;

  static ParadigmTable from_text(std::string_view text) {
    ParadigmTable t;
    for (const Record& r : parse_records(text)) t.add_paradigm_record(r);
    return t;
  }

  void add_paradigm_record(const Record& r) {
    Paradigm p;
    auto name = r.atom("Name");
    if (!name) throw ParadigmError("paradigm record needs a Name");
    p.name = *name;
    std::set<std::string> seen;
    for (const Record* sr : r.records("Slot")) {
      ParadigmSlot slot;
      auto sn = sr->atom("Name");
      if (!sn) throw ParadigmError("paradigm slot needs a Name in '" + p.name + "'");
      slot.name = *sn;
      if (!seen.insert(slot.name).second)
        throw ParadigmError("duplicate slot '" + slot.name + "' in paradigm '" + p.name + "'");
      if (const Value* rules = sr->find("Rules")) {
        if (!rules->is_atom_list())
          throw ParadigmError("slot Rules must be an atom list in '" + p.name + "'");
        for (const std::string& ex : rules->as_atom_list())
          slot.rules.push_back(compile_rule(ex, Side::Suffix));
      }
      if (const Value* forms = sr->find("Forms")) {
        if (forms->is_atom_list())
          slot.forms = forms->as_atom_list();
        else if (forms->is_atom())
          slot.forms.push_back(forms->as_atom());
      }
      p.slots.push_back(std::move(slot));
    }
    paradigms_.push_back(std::move(p));
  }

  const Paradigm* find(std::string_view name) const {
    for (const Paradigm& p : paradigms_)
      if (p.name == name) return &p;
    return nullptr;
  }

  const std::vector<Paradigm>& paradigms() const { return paradigms_; }

private:
  std::vector<Paradigm> paradigms_;
};

inline ParadigmTable load_paradigms(std::string_view text) {
  return ParadigmTable::from_text(text);
}

// One (slot, form) pair per generated form, in slot order.  Explicit forms
// override rule-generated ones; a slot with several declared forms yields
// several pairs.
inline std::vector<std::pair<std::string, std::string>> generate_paradigm(
    std::string_view lemma, const Paradigm& paradigm) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const ParadigmSlot& slot : paradigm.slots) {
    if (!slot.forms.empty()) {
      for (const std::string& f : slot.forms) out.emplace_back(slot.name, f);
      continue;
    }
    std::vector<std::string> forms;
    for (const AllomorphRule& r : slot.rules) {
      if (lemma.size() < r.replacement.size()) continue;
      if (lemma.substr(lemma.size() - r.replacement.size()) != r.replacement) continue;
      std::string stem(lemma.substr(0, lemma.size() - r.replacement.size()));
      if (stem.empty()) continue;
      std::string form = stem + r.affix;
      if (std::find(forms.begin(), forms.end(), form) == forms.end()) forms.push_back(form);
    }
    for (const std::string& f : forms) out.emplace_back(slot.name, f);
  }
  return out;
}

}  // namespace morels
