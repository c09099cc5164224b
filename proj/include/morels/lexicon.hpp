#pragma once

// Dictionary senses and the lexicon index.  One top-level record per sense;
// Headword, Cat, Ldoce and Defin are required, everything else optional.
// Attributes that are not reserved fields split into semantic relations
// (Hypernym, SubjOf, ...) and derivational link attributes (Nomnlz, ProfsnOf,
// ...); link attributes are recognized by their record shape: every record
// carries both Lemma and Morels.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "morels/category.hpp"
#include "morels/record.hpp"

namespace morels {

enum class LexiconErrorKind {
  MissingRequiredAttr,
  DuplicateSense,
  BadSenseNumber,
  UnknownSense,
};

struct LexiconError : std::runtime_error {
  LexiconError(LexiconErrorKind k, const std::string& what)
      : std::runtime_error(what), kind(k) {}
  LexiconErrorKind kind;
};

struct SenseKey {
  std::string headword;  // lowercased
  Cat pos;
  int sense_no;

  auto operator<=>(const SenseKey&) const = default;
};

// One directed derivational edge stored under a link attribute.
struct Link {
  std::string attr;
  std::string lemma;
  std::optional<Cat> pos;
  int ldoce = 0;
  int morels = 0;
};

struct Sense {
  std::string headword;
  Cat pos = Cat::Noun;
  int sense_no = 0;  // normalized numbering; 0 is the word-level pseudo-sense
  std::string defin;
  std::set<std::string> preps;
  std::optional<std::string> paradigm;
  Record relations;
  Record links;
  // Raw RunOn declarations: { Lemma <derived> Cat <pos> } records.
  std::vector<Record> runon_decls;

  SenseKey key() const { return SenseKey{to_lower(headword), pos, sense_no}; }
};

struct RunOnTriple {
  std::string derived;
  Cat pos = Cat::Noun;
  std::string base;

  bool operator==(const RunOnTriple&) const = default;
};

namespace detail {

inline const char* kReservedSenseAttrs[] = {"Headword", "Cat",     "Ldoce", "Defin",
                                            "Preps",    "Paradigm", "RunOn"};

inline bool is_reserved_sense_attr(std::string_view name) {
  for (const char* a : kReservedSenseAttrs)
    if (name == a) return true;
  return false;
}

// Link attributes hold records that each carry Lemma and Morels; semantic
// relation records never carry Morels.
inline bool looks_like_link_attr(const Value& v) {
  if (!v.is_rec() && !v.is_rec_list()) return false;
  for (const Record* r : v.records())
    if (!r->has("Lemma") || !r->has("Morels")) return false;
  return true;
}

}  // namespace detail

class Lexicon {
public:
  Lexicon() = default;

  // Loading ------------------------------------------------------------

  static Lexicon from_records(const std::vector<Record>& recs) {
    Lexicon lex;
    for (const Record& r : recs) lex.add_sense_record(r);
    return lex;
  }

  static Lexicon from_text(std::string_view text) { return from_records(parse_records(text)); }

  void add_sense_record(const Record& r) {
    Sense s;
    auto hw = r.atom("Headword");
    auto cat = r.atom("Cat");
    auto ldoce = r.atom("Ldoce");
    const Value* defin = r.find("Defin");
    if (!hw || !cat || !ldoce || !defin || !defin->is_atom())
      throw LexiconError(LexiconErrorKind::MissingRequiredAttr,
                         "sense record needs Headword, Cat, Ldoce and Defin");
    s.headword = *hw;
    auto pos = cat_from_atom(*cat);
    if (!pos)
      throw LexiconError(LexiconErrorKind::MissingRequiredAttr,
                         "unknown Cat '" + *cat + "' in sense for '" + s.headword + "'");
    s.pos = *pos;
    bool ok = false;
    s.sense_no = detail::parse_int_atom(*ldoce, ok);
    if (!ok || s.sense_no < 0 || (s.sense_no > 0 && s.sense_no < 100))
      throw LexiconError(LexiconErrorKind::BadSenseNumber,
                         "bad Ldoce '" + *ldoce + "' in sense for '" + s.headword +
                             "' (expected 0 or >= 100)");
    s.defin = defin->as_atom();
    if (const Value* preps = r.find("Preps"); preps && preps->is_atom_list())
      s.preps.insert(preps->as_atom_list().begin(), preps->as_atom_list().end());
    if (auto para = r.atom("Paradigm")) s.paradigm = *para;
    for (const Record* ro : r.records("RunOn")) s.runon_decls.push_back(*ro);

    for (const auto& [name, value] : r.attrs()) {
      if (detail::is_reserved_sense_attr(name)) continue;
      if (detail::looks_like_link_attr(value)) {
        s.links.add(name, value);
      } else {
        s.relations.add(name, value);
      }
    }
    add_sense(std::move(s));
  }

  void add_sense(Sense s) {
    SenseKey key = s.key();
    if (by_key_.count(key))
      throw LexiconError(LexiconErrorKind::DuplicateSense,
                         "duplicate sense " + s.headword + "/" + cat_atom(s.pos) + "/" +
                             std::to_string(s.sense_no));
    std::size_t idx = senses_.size();
    senses_.push_back(std::move(s));
    by_key_[key] = idx;
    index_[{key.headword, key.pos}].push_back(idx);
  }

  // Queries ------------------------------------------------------------

  const std::vector<Sense>& senses() const { return senses_; }

  const Sense* find(const SenseKey& key) const {
    auto it = by_key_.find(key);
    return it == by_key_.end() ? nullptr : &senses_[it->second];
  }

  std::vector<const Sense*> lookup(std::string_view lemma, std::optional<Cat> pos = {}) const {
    std::string low = to_lower(lemma);
    std::vector<const Sense*> out;
    auto collect = [&](Cat c) {
      auto it = index_.find({low, c});
      if (it == index_.end()) return;
      for (std::size_t i : it->second) out.push_back(&senses_[i]);
    };
    if (pos) {
      collect(*pos);
    } else {
      collect(Cat::Noun);
      collect(Cat::Verb);
      collect(Cat::Adj);
      collect(Cat::Adv);
    }
    std::sort(out.begin(), out.end(), [](const Sense* a, const Sense* b) {
      if (a->sense_no != b->sense_no) return a->sense_no < b->sense_no;
      return static_cast<int>(a->pos) < static_cast<int>(b->pos);
    });
    return out;
  }

  bool contains(std::string_view lemma, Cat pos) const {
    return index_.count({to_lower(lemma), pos}) > 0;
  }

  // Direct hypernym lemmas of the given word: the Lemma of each record (or
  // every atom of an atom list) stored under the Hypernym attribute.  Never
  // recurses into nested relations.
  std::set<std::string> hypernyms_of(std::string_view lemma, std::optional<Cat> pos = {}) const {
    std::set<std::string> out;
    for (const Sense* s : lookup(lemma, pos)) {
      for (const Value* v : s->relations.get_all("Hypernym")) {
        if (v->is_atom()) {
          out.insert(to_lower(v->as_atom()));
        } else if (v->is_atom_list()) {
          for (const auto& a : v->as_atom_list()) out.insert(to_lower(a));
        } else {
          for (const Record* r : v->records())
            for (const Value* lv : r->get_all("Lemma"))
              if (lv->is_atom()) out.insert(to_lower(lv->as_atom()));
        }
      }
    }
    return out;
  }

  // Run-on triples declared on base entries, in document order.
  std::vector<RunOnTriple> gold_runons() const {
    std::vector<RunOnTriple> out;
    for (const Sense& s : senses_) {
      for (const Record& ro : s.runon_decls) {
        auto lemma = ro.atom("Lemma");
        auto cat = ro.atom("Cat");
        if (!lemma || !cat) continue;
        auto pos = cat_from_atom(*cat);
        if (!pos) continue;
        out.push_back(RunOnTriple{*lemma, *pos, s.headword});
      }
    }
    return out;
  }

  // Update -------------------------------------------------------------

  // Appends `link` under `attr` on the addressed sense.  Idempotent for an
  // identical (attr, Lemma, pos, Ldoce) key: the Morels score is overwritten.
  void apply_link(const SenseKey& key, const std::string& attr, const Link& link) {
    auto it = by_key_.find(key);
    if (it == by_key_.end())
      throw LexiconError(LexiconErrorKind::UnknownSense,
                         "unknown sense " + key.headword + "/" + cat_atom(key.pos) + "/" +
                             std::to_string(key.sense_no));
    Sense& s = senses_[it->second];

    std::vector<Record> recs;
    for (const Record* r : s.links.records(attr)) recs.push_back(*r);

    Record lr;
    lr.add("Ldoce", Value::atom(std::to_string(link.ldoce)));
    lr.add("Lemma", Value::atom(link.lemma));
    if (link.pos) lr.add("Cat", Value::atom(cat_atom(*link.pos)));
    lr.add("Morels", Value::atom(std::to_string(link.morels)));

    bool replaced = false;
    for (Record& r : recs) {
      bool same = r.atom("Lemma") == std::optional<std::string>(link.lemma) &&
                  r.atom("Ldoce") == std::optional<std::string>(std::to_string(link.ldoce));
      std::optional<std::string> rcat = r.atom("Cat");
      std::optional<std::string> lcat =
          link.pos ? std::optional<std::string>(cat_atom(*link.pos)) : std::nullopt;
      if (same && rcat == lcat) {
        r = lr;
        replaced = true;
        break;
      }
    }
    if (!replaced) recs.push_back(lr);
    s.links.set(attr, Value::rec_list(std::move(recs)));
  }

  // Creates (or returns) the word-level pseudo-sense 0 for a word, used for
  // links that hold between words rather than between particular senses.
  SenseKey ensure_pseudo_sense(const std::string& headword, Cat pos) {
    SenseKey key{to_lower(headword), pos, 0};
    if (!by_key_.count(key)) {
      Sense s;
      s.headword = headword;
      s.pos = pos;
      s.sense_no = 0;
      add_sense(std::move(s));
    }
    return key;
  }

  // All link edges stored anywhere in the lexicon, as (owner key, link).
  std::vector<std::pair<SenseKey, Link>> all_links() const {
    std::vector<std::pair<SenseKey, Link>> out;
    for (const Sense& s : senses_) {
      for (const auto& [attr, value] : s.links.attrs()) {
        for (const Record* r : value.records()) {
          Link l;
          l.attr = attr;
          l.lemma = r->atom("Lemma").value_or("");
          if (auto c = r->atom("Cat")) l.pos = cat_from_atom(*c);
          bool ok = false;
          l.ldoce = detail::parse_int_atom(r->atom("Ldoce").value_or(""), ok);
          l.morels = detail::parse_int_atom(r->atom("Morels").value_or(""), ok);
          out.emplace_back(s.key(), std::move(l));
        }
      }
    }
    return out;
  }

  // Serialization --------------------------------------------------------

  Record sense_record(const Sense& s) const {
    Record r;
    r.add("Headword", Value::atom(s.headword));
    r.add("Cat", Value::atom(cat_atom(s.pos)));
    r.add("Ldoce", Value::atom(std::to_string(s.sense_no)));
    r.add("Defin", Value::atom(s.defin));
    if (!s.preps.empty())
      r.add("Preps", Value::atom_list({s.preps.begin(), s.preps.end()}));
    if (s.paradigm) r.add("Paradigm", Value::atom(*s.paradigm));
    if (!s.runon_decls.empty()) r.add("RunOn", Value::rec_list(s.runon_decls));
    for (const auto& [name, value] : s.relations.attrs()) r.add(name, value);
    for (const auto& [name, value] : s.links.attrs()) r.add(name, value);
    return r;
  }

  std::string to_text() const {
    std::vector<Record> recs;
    recs.reserve(senses_.size());
    for (const Sense& s : senses_) recs.push_back(sense_record(s));
    return serialize_records(recs);
  }

private:
  std::vector<Sense> senses_;
  std::map<SenseKey, std::size_t> by_key_;
  std::map<std::pair<std::string, Cat>, std::vector<std::size_t>> index_;
};

inline Lexicon load_lexicon(std::string_view text) { return Lexicon::from_text(text); }

}  // namespace morels
