#pragma once

// Morpheme tables: category in/out, continuation classes, allomorph rules
// compiled from worked examples ("geograph er -> geograph y"), a weighted
// semantic-relation template, and the pair of derivational attribute names
// written into the lexicon when a derivation is accepted.

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "morels/category.hpp"
#include "morels/record.hpp"

namespace morels {

enum class MorphemeErrorKind { MissingField, BadRuleSyntax, DuplicateMorphemeName, StemMismatch };

struct MorphemeError : std::runtime_error {
  MorphemeError(MorphemeErrorKind k, const std::string& what)
      : std::runtime_error(what), kind(k) {}
  MorphemeErrorKind kind;
};

enum class Side { Prefix, Suffix };

// (_er -> _y): strip "er" from the derived surface, append "y" to recover the
// base surface.  Prefix rules work on the front of the word instead.
struct AllomorphRule {
  std::string affix;
  Side side = Side::Suffix;
  std::string replacement;

  auto operator<=>(const AllomorphRule&) const = default;
};

struct Morpheme {
  std::string name;
  Cat cat = Cat::Noun;   // category of the derived word
  Cat pcat = Cat::Noun;  // category the morpheme attaches to
  std::vector<std::string> next_morphs;
  std::vector<AllomorphRule> rules;
  Record semrel_template;  // weighted relation template; may be empty
  std::string attr;        // e.g. Profsn
  std::string attr_of;     // e.g. ProfsnOf
  std::string defin;
  std::string exs;
  Side side = Side::Suffix;

  bool allows_final() const {
    return std::find(next_morphs.begin(), next_morphs.end(), "None") != next_morphs.end();
  }
  bool allows_next(std::string_view outer) const {
    return std::find(next_morphs.begin(), next_morphs.end(), outer) != next_morphs.end();
  }
};

namespace detail {

inline std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace detail

// Compiles one worked example into an affix-rewrite rule.  The example has
// the shape `stem affix -> stem [replacement]` for suffixes and
// `affix stem -> stem [replacement]` for prefixes; the stem token must be the
// same on both sides and is discarded.
inline AllomorphRule compile_rule(std::string_view example, Side side) {
  auto arrow = example.find("->");
  if (arrow == std::string_view::npos)
    throw MorphemeError(MorphemeErrorKind::BadRuleSyntax,
                        "rule needs '->': " + std::string(example));
  std::vector<std::string> lhs = detail::split_ws(example.substr(0, arrow));
  std::vector<std::string> rhs = detail::split_ws(example.substr(arrow + 2));
  if (lhs.size() != 2 || rhs.empty() || rhs.size() > 2)
    throw MorphemeError(MorphemeErrorKind::BadRuleSyntax,
                        "rule sides must be 'stem affix' (or 'affix stem') and "
                        "'stem [replacement]': " +
                            std::string(example));
  const std::string& stem = (side == Side::Suffix) ? lhs[0] : lhs[1];
  const std::string& affix = (side == Side::Suffix) ? lhs[1] : lhs[0];
  if (affix.empty() || stem.empty())
    throw MorphemeError(MorphemeErrorKind::BadRuleSyntax,
                        "empty stem or affix: " + std::string(example));
  if (rhs[0] != stem)
    throw MorphemeError(MorphemeErrorKind::StemMismatch,
                        "stem differs across '->': " + std::string(example));
  AllomorphRule r;
  r.affix = affix;
  r.side = side;
  r.replacement = rhs.size() == 2 ? rhs[1] : "";
  return r;
}

class MorphemeTable {
public:
  MorphemeTable() = default;

  static MorphemeTable from_records(const std::vector<Record>& recs) {
    MorphemeTable t;
    for (const Record& r : recs) t.add_morpheme_record(r);
    return t;
  }

  static MorphemeTable from_text(std::string_view text) {
    return from_records(parse_records(text));
  }

  void add_morpheme_record(const Record& r) {
    Morpheme m;
    auto name = r.atom("Name");
    auto cat = r.atom("Cat");
    auto pcat = r.atom("PCat");
    const Value* next = r.find("NextMorphs");
    const Value* rules = r.find("Rules");
    if (!name || !cat || !pcat || !next || !rules)
      throw MorphemeError(MorphemeErrorKind::MissingField,
                          "morpheme record needs Name, Cat, PCat, NextMorphs and Rules");
    m.name = *name;
    auto c = cat_from_atom(*cat);
    auto pc = cat_from_atom(*pcat);
    if (!c || !pc)
      throw MorphemeError(MorphemeErrorKind::MissingField,
                          "unknown category in morpheme '" + m.name + "'");
    m.cat = *c;
    m.pcat = *pc;
    if (!next->is_atom_list())
      throw MorphemeError(MorphemeErrorKind::MissingField,
                          "NextMorphs must be an atom list in '" + m.name + "'");
    m.next_morphs = next->as_atom_list();

    if (auto side = r.atom("Side")) {
      if (*side == "Prefix")
        m.side = Side::Prefix;
      else if (*side == "Suffix")
        m.side = Side::Suffix;
      else
        throw MorphemeError(MorphemeErrorKind::MissingField,
                            "Side must be Prefix or Suffix in '" + m.name + "'");
    }

    std::vector<std::string> examples;
    if (rules->is_atom_list()) {
      examples = rules->as_atom_list();
    } else if (rules->is_atom()) {
      examples.push_back(rules->as_atom());
    } else {
      throw MorphemeError(MorphemeErrorKind::BadRuleSyntax,
                          "Rules must be a list of rule strings in '" + m.name + "'");
    }
    if (examples.empty())
      throw MorphemeError(MorphemeErrorKind::BadRuleSyntax,
                          "morpheme '" + m.name + "' has an empty Rules list");
    // Duplicate compiled rules collapse; the examples exist for maintenance.
    std::set<AllomorphRule> seen;
    for (const std::string& ex : examples) {
      AllomorphRule rule = compile_rule(ex, m.side);
      if (seen.insert(rule).second) m.rules.push_back(rule);
    }

    auto attr = r.atom("Attr");
    auto attr_of = r.atom("AttrOf");
    if (!attr || !attr_of || attr->empty() || attr_of->empty() || *attr == *attr_of)
      throw MorphemeError(MorphemeErrorKind::MissingField,
                          "morpheme '" + m.name + "' needs distinct Attr and AttrOf names");
    m.attr = *attr;
    m.attr_of = *attr_of;
    m.defin = r.atom("Defin").value_or("");
    m.exs = r.atom("Exs").value_or("");

    if (const Value* tmpl = r.find("Template")) {
      if (!tmpl->is_rec())
        throw MorphemeError(MorphemeErrorKind::MissingField,
                            "Template must be a record in '" + m.name + "'");
      validate_template(tmpl->as_rec(), m.name);
      m.semrel_template = tmpl->as_rec();
    }

    if (by_name_.count(m.name))
      throw MorphemeError(MorphemeErrorKind::DuplicateMorphemeName,
                          "duplicate morpheme name '" + m.name + "'");
    by_name_[m.name] = morphemes_.size();
    morphemes_.push_back(std::move(m));
  }

  const std::vector<Morpheme>& morphemes() const { return morphemes_; }

  const Morpheme* find(std::string_view name) const {
    auto it = by_name_.find(std::string(name));
    return it == by_name_.end() ? nullptr : &morphemes_[it->second];
  }

private:
  static void validate_template(const Record& tmpl, const std::string& name) {
    for (const auto& [attr, value] : tmpl.attrs()) {
      if (!value.is_rec() && !value.is_rec_list())
        throw MorphemeError(MorphemeErrorKind::MissingField,
                            "template relation '" + attr + "' must be a record in '" + name +
                                "'");
      for (const Record* slot : value.records()) validate_slot(*slot, attr, name);
    }
  }

  static void validate_slot(const Record& slot, const std::string& attr,
                            const std::string& name) {
    auto weight = slot.atom("Morels");
    bool ok = false;
    int w = weight ? detail::parse_int_atom(*weight, ok) : 0;
    if (!ok || w <= 0)
      throw MorphemeError(MorphemeErrorKind::MissingField,
                          "template relation '" + attr + "' in '" + name +
                              "' needs a positive Morels weight");
    for (const auto& [sub, value] : slot.attrs()) {
      if (sub == "Morels" || sub == "Lemmas") continue;
      if (!value.is_rec() && !value.is_rec_list())
        throw MorphemeError(MorphemeErrorKind::MissingField,
                            "template sub-relation '" + sub + "' must be a record in '" + name +
                                "'");
      for (const Record* nested : value.records()) validate_slot(*nested, sub, name);
    }
  }

  std::vector<Morpheme> morphemes_;
  std::map<std::string, std::size_t> by_name_;
};

inline MorphemeTable load_morphemes(std::string_view text) {
  return MorphemeTable::from_text(text);
}

// All (morpheme, rule) pairs whose affix is a proper prefix/suffix of `word`
// with a non-empty stem left over.  Order: longer affixes first, then
// morpheme name, then longer replacements first.
inline std::vector<std::pair<const Morpheme*, AllomorphRule>> morphemes_for_affix(
    const MorphemeTable& table, std::string_view word) {
  std::vector<std::pair<const Morpheme*, AllomorphRule>> out;
  for (const Morpheme& m : table.morphemes()) {
    for (const AllomorphRule& r : m.rules) {
      if (r.affix.size() >= word.size()) continue;  // stem must be non-empty
      bool hit = (r.side == Side::Suffix)
                     ? word.substr(word.size() - r.affix.size()) == r.affix
                     : word.substr(0, r.affix.size()) == r.affix;
      if (hit) out.emplace_back(&m, r);
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.second.affix.size() != b.second.affix.size())
      return a.second.affix.size() > b.second.affix.size();
    if (a.first->name != b.first->name) return a.first->name < b.first->name;
    if (a.second.replacement.size() != b.second.replacement.size())
      return a.second.replacement.size() > b.second.replacement.size();
    return a.second.replacement < b.second.replacement;
  });
  return out;
}

// Base surface hypothesized by applying `rule` to `word`; empty optional when
// the affix does not fit.
inline std::optional<std::string> strip_affix(std::string_view word, const AllomorphRule& rule) {
  if (rule.affix.size() >= word.size()) return std::nullopt;
  if (rule.side == Side::Suffix) {
    if (word.substr(word.size() - rule.affix.size()) != rule.affix) return std::nullopt;
    std::string stem(word.substr(0, word.size() - rule.affix.size()));
    return stem + rule.replacement;
  }
  if (word.substr(0, rule.affix.size()) != rule.affix) return std::nullopt;
  std::string stem(word.substr(rule.affix.size()));
  return rule.replacement + stem;
}

// Stem length after stripping the affix, before the replacement is attached.
inline std::size_t stem_length(std::string_view word, const AllomorphRule& rule) {
  return word.size() - rule.affix.size();
}

}  // namespace morels
