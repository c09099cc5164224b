#include "doctest.h"

#include "morels/linker.hpp"
#include "morels/reports.hpp"

#include "test_helpers.hpp"

using namespace morels;

namespace {

const Sense* sense(const Lexicon& lex, const char* hw, Cat pos, int no) {
  const Sense* s = lex.find(SenseKey{hw, pos, no});
  REQUIRE(s != nullptr);
  return s;
}

Lexicon built_fixture() {
  Lexicon lex = test::fixture_lexicon();
  build_graph(lex, test::fixture_morphemes(), ScoreConfig{}, LinkWeights{});
  return lex;
}

}  // namespace

TEST_CASE("shared domains dominate the link score") {
  const Lexicon& lex = test::fixture_lexicon();
  LinkWeights w;
  const Sense* c103 = sense(lex, "conversion", Cat::Noun, 103);
  int vs_rugby = link_senses(*c103, *sense(lex, "convert", Cat::Verb, 105), w, lex);
  int vs_persuade = link_senses(*c103, *sense(lex, "convert", Cat::Verb, 100), w, lex);
  CHECK(vs_rugby == 20);
  CHECK(vs_rugby > vs_persuade);
}

TEST_CASE("senses sharing nothing score zero") {
  const Lexicon& lex = test::fixture_lexicon();
  Lexicon tiny = load_lexicon(
      "{ Headword \"alpha\" Cat Noun Ldoce 100 Defin \"a\" }"
      "{ Headword \"beta\" Cat Noun Ldoce 100 Defin \"b\" }");
  CHECK(link_senses(*sense(tiny, "alpha", Cat::Noun, 100), *sense(tiny, "beta", Cat::Noun, 100),
                    LinkWeights{}, lex) == 0);
}

TEST_CASE("the religion sense of convert outranks the persuade sense") {
  const Lexicon& lex = test::fixture_lexicon();
  LinkWeights w;
  const Sense* c102 = sense(lex, "conversion", Cat::Noun, 102);
  int vs_religion = link_senses(*c102, *sense(lex, "convert", Cat::Verb, 101), w, lex);
  int vs_persuade = link_senses(*c102, *sense(lex, "convert", Cat::Verb, 100), w, lex);
  CHECK(vs_religion == 12);
  CHECK(vs_persuade == 2);
  CHECK(vs_religion > vs_persuade);
}

TEST_CASE("build_links on viewer reproduces the sign pattern") {
  const Lexicon& lex = test::fixture_lexicon();
  auto tuples = build_links("viewer", lex, test::fixture_morphemes(), ScoreConfig{},
                            LinkWeights{});
  REQUIRE(tuples.size() == 9);
  int positives = 0;
  for (const LinkTuple& t : tuples) {
    if (t.base.pos == Cat::Noun) CHECK(t.score < 0);
    if (t.score > 0) {
      ++positives;
      CHECK(t.base.pos == Cat::Verb);
      CHECK(t.base.sense_no == 119);
    }
  }
  CHECK(positives == 1);
}

TEST_CASE("build_links on corner carries the negative gate to every base sense") {
  const Lexicon& lex = test::fixture_lexicon();
  auto tuples = build_links("corner", lex, test::fixture_morphemes(), ScoreConfig{},
                            LinkWeights{});
  REQUIRE(tuples.size() == 2);  // two corner senses, one corn sense
  for (const LinkTuple& t : tuples) {
    CHECK(t.score == -4);
    CHECK(!t.gate_positive);
    CHECK(t.base.headword == "corn");
  }
}

TEST_CASE("build_links on a monomorphemic word is empty") {
  CHECK(build_links("bank", test::fixture_lexicon(), test::fixture_morphemes(), ScoreConfig{},
                    LinkWeights{})
            .empty());
}

TEST_CASE("gate soundness: positive link scores only behind a positive gate") {
  const Lexicon& lex = test::fixture_lexicon();
  for (const std::string& w : corpus_headwords(lex))
    for (const LinkTuple& t :
         build_links(w, lex, test::fixture_morphemes(), ScoreConfig{}, LinkWeights{}))
      if (!t.gate_positive) CHECK(t.score <= 0);
}

TEST_CASE("update_graph stores the five conversion links") {
  Lexicon lex = built_fixture();
  const Sense* c102 = sense(lex, "conversion", Cat::Noun, 102);
  auto links = c102->links.records("NomnlzOf");
  REQUIRE(links.size() == 5);
  std::map<int, int> by_target;
  for (const Record* r : links) {
    bool ok = false;
    by_target[morels::detail::parse_int_atom(r->atom("Ldoce").value_or(""), ok)] =
        morels::detail::parse_int_atom(r->atom("Morels").value_or(""), ok);
    CHECK(r->atom("Lemma") == "convert");
  }
  // Highest-scoring link targets the religion sense; the money senses rank
  // above the persuade and cause senses; the rugby sense is absent.
  CHECK(by_target.count(105) == 0);
  CHECK(by_target[101] > by_target[103]);
  CHECK(by_target[103] == by_target[104]);
  CHECK(by_target[103] > by_target[100]);
  CHECK(by_target[100] == by_target[102]);
  CHECK(by_target[100] > 0);
}

TEST_CASE("update_graph writes both members of the attribute pair") {
  Lexicon lex = built_fixture();
  const Sense* carto = sense(lex, "cartography", Cat::Noun, 100);
  bool forward = false;
  for (const Record* r : carto->links.records("Profsn"))
    forward = forward || r->atom("Lemma") == "cartographer";
  CHECK(forward);

  const Sense* grapher = sense(lex, "cartographer", Cat::Noun, 100);
  bool back = false;
  for (const Record* r : grapher->links.records("ProfsnOf"))
    back = back || r->atom("Lemma") == "cartography";
  CHECK(back);
}

TEST_CASE("updating with an empty link set changes nothing") {
  Lexicon lex = test::fixture_lexicon();
  std::string before = lex.to_text();
  update_graph(lex, {});
  CHECK(lex.to_text() == before);
}

TEST_CASE("dubious derivations land on word-level pseudo-senses") {
  Lexicon lex = built_fixture();
  // corner/corn are linked at the word level, not between any real senses.
  const Sense* corn0 = lex.find(SenseKey{"corn", Cat::Noun, 0});
  REQUIRE(corn0 != nullptr);
  auto links = corn0->links.records("Profsn");
  REQUIRE(links.size() == 1);
  CHECK(links[0]->atom("Lemma") == "corner");
  CHECK(links[0]->atom("Morels") == "-4");
  CHECK(links[0]->atom("Ldoce") == "0");
  for (const Sense* s : lex.lookup("corn", Cat::Noun))
    if (s->sense_no != 0) CHECK(s->links.records("Profsn").empty());

  const Sense* corner0 = lex.find(SenseKey{"corner", Cat::Noun, 0});
  REQUIRE(corner0 != nullptr);
  CHECK(corner0->links.records("ProfsnOf").size() == 1);
}

TEST_CASE("graph queries walk one edge or the whole family") {
  Lexicon lex = built_fixture();

  CHECK(bases_of(lex, "cartographer") == std::set<std::string>{"cartography"});
  CHECK(derivatives_of(lex, "griddle").empty());
  CHECK(derivatives_of(lex, "journalism") ==
        std::set<std::string>{"journalistic", "journalistically"});

  std::set<std::string> family = derivational_family(lex, "believe");
  std::set<std::string> expected = {"belief",     "believe",      "believable", "unbelievable",
                                    "believer",   "disbelief",    "disbelieve", "unbelief",
                                    "unbelieving", "unbelievingly"};
  CHECK(family == expected);

  CHECK(derivational_family(lex, "griddle") == std::set<std::string>{"griddle"});

  for (const std::string& member : expected) CHECK(derivational_family(lex, member) == expected);
}

TEST_CASE("every stored link has exactly one symmetric partner") {
  Lexicon lex = built_fixture();
  auto links = lex.all_links();
  CHECK(!links.empty());
  for (const auto& [owner, link] : links) {
    std::string partner_attr =
        is_of_attr(link.attr) ? link.attr.substr(0, link.attr.size() - 2) : link.attr + "Of";
    REQUIRE(link.pos.has_value());
    const Sense* target = lex.find(SenseKey{to_lower(link.lemma), *link.pos, link.ldoce});
    REQUIRE(target != nullptr);
    int partners = 0;
    for (const Record* r : target->links.records(partner_attr)) {
      bool ok = false;
      if (to_lower(r->atom("Lemma").value_or("")) == owner.headword &&
          morels::detail::parse_int_atom(r->atom("Ldoce").value_or(""), ok) == owner.sense_no &&
          morels::detail::parse_int_atom(r->atom("Morels").value_or(""), ok) == link.morels)
        ++partners;
    }
    CHECK(partners == 1);
  }
}

TEST_CASE("argmax per derived sense is stable under uniform weight scaling") {
  const Lexicon& lex = test::fixture_lexicon();
  LinkWeights w;
  LinkWeights scaled{w.prep_match * 3, w.prep_miss * 3, w.domain_match * 3, w.domain_miss * 3,
                     w.hyp_content_match * 3};
  for (const char* word : {"conversion", "viewer", "geographer", "believer"}) {
    auto plain = build_links(word, lex, test::fixture_morphemes(), ScoreConfig{}, w);
    auto big = build_links(word, lex, test::fixture_morphemes(), ScoreConfig{}, scaled);
    REQUIRE(plain.size() == big.size());
    auto argmax = [](const std::vector<LinkTuple>& ts) {
      std::map<SenseKey, std::pair<SenseKey, int>> out;
      for (const LinkTuple& t : ts) {
        auto it = out.find(t.derived);
        if (it == out.end() || t.score > it->second.second)
          out[t.derived] = {t.base, t.score};
      }
      return out;
    };
    auto a = argmax(plain);
    auto b = argmax(big);
    REQUIRE(a.size() == b.size());
    for (const auto& [k, v] : a) CHECK(b.at(k).first == v.first);
  }
}

TEST_CASE("weights load from the records grammar") {
  WeightsConfig c = load_weights(test::slurp(test::data_file("weights.rec")));
  CHECK(c.weights.prep_match == 2);
  CHECK(c.weights.prep_miss == -1);
  CHECK(c.weights.domain_match == 5);
  CHECK(c.weights.domain_miss == -5);
  CHECK(c.weights.hyp_content_match == 5);
  CHECK(c.scoring.fail_score == -4);
  CHECK(c.scoring.fallback_uses_slot_weight);
}

TEST_CASE("weight files with flipped signs are rejected") {
  CHECK_THROWS_AS(load_weights("{ PrepMiss 3 }"), WeightsError);
  CHECK_THROWS_AS(load_weights("{ FailScore 4 }"), WeightsError);
  CHECK_THROWS_AS(load_weights("{ DomainMatch -2 }"), WeightsError);
}
