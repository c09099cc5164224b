#include "doctest.h"

#include "morels/record.hpp"

#include <random>

#include "test_helpers.hpp"

using namespace morels;

TEST_CASE("parse a nested record") {
  Record r = parse_record(R"({ Hypernym { Lemma "plate" } })");
  REQUIRE(r.size() == 1);
  const Value* v = r.find("Hypernym");
  REQUIRE(v != nullptr);
  REQUIRE(v->is_rec());
  CHECK(v->as_rec().atom("Lemma") == "plate");
}

TEST_CASE("parse the empty record") {
  Record r = parse_record("{ }");
  CHECK(r.empty());
}

TEST_CASE("parse an atom list") {
  Record r = parse_record("{ NextMorphs (Noun_Plural None) }");
  const Value* v = r.find("NextMorphs");
  REQUIRE(v != nullptr);
  REQUIRE(v->is_atom_list());
  CHECK(v->as_atom_list() == std::vector<std::string>{"Noun_Plural", "None"});
}

TEST_CASE("repeated record attributes aggregate into a RecList") {
  Record r = parse_record(R"({ SubjOf { Lemma "study" } SubjOf { Lemma "know" } })");
  REQUIRE(r.size() == 1);
  const Value* v = r.find("SubjOf");
  REQUIRE(v->is_rec_list());
  auto recs = v->records();
  REQUIRE(recs.size() == 2);
  CHECK(recs[0]->atom("Lemma") == "study");
  CHECK(recs[1]->atom("Lemma") == "know");
}

TEST_CASE("several records after one attribute name form a RecList") {
  Record r = parse_record(R"({ Hypernym { Lemma "work" } { Lemma "profession" } })");
  const Value* v = r.find("Hypernym");
  REQUIRE(v->is_rec_list());
  CHECK(v->records().size() == 2);
}

TEST_CASE("comments are skipped outside strings") {
  Record r = parse_record("// leading note\n{ Lemma \"a // not a comment\" // trailing\n}");
  CHECK(r.atom("Lemma") == "a // not a comment");
}

TEST_CASE("serialize the empty record") { CHECK(serialize_record(Record{}) == "{\n}"); }

TEST_CASE("serialize a single-atom record") {
  Record r;
  r.add("Lemma", Value::atom("person"));
  CHECK(serialize_record(r) == "{\n  Lemma person\n}");
}

TEST_CASE("atoms with whitespace or delimiters are quoted") {
  Record r;
  r.add("Defin", Value::atom("a flat dish"));
  r.add("Odd", Value::atom("br{ce"));
  std::string s = serialize_record(r);
  CHECK(s.find("\"a flat dish\"") != std::string::npos);
  CHECK(s.find("\"br{ce\"") != std::string::npos);
  CHECK(parse_record(s) == r);
}

TEST_CASE("linked conversion sense round-trips") {
  std::string text = test::slurp(test::data_file("conversion_linked.rec"));
  Record r = parse_record(text);
  CHECK(parse_record(serialize_record(r)) == r);
  CHECK(r.records("NomnlzOf").size() == 5);
}

TEST_CASE("get_all flattens RecList values and repeated names") {
  const Lexicon& lex = test::fixture_lexicon();
  const Sense* g = lex.lookup("geographer", Cat::Noun).front();
  CHECK(g->relations.records("SubjOf").size() == 2);

  Record empty;
  CHECK(empty.get_all("X").empty());
}

TEST_CASE("unbalanced delimiters report a typed error with position") {
  for (const char* bad : {"{ Lemma person", "{ Lemma }", "} ", "{ X (a b }", "{ A {B} } trailing",
                          "{ (x) y }"}) {
    CHECK_THROWS_AS(parse_record(bad), ParseError);
    try {
      parse_record(bad);
    } catch (const ParseError& e) {
      CHECK(e.kind == ParseErrorKind::UnbalancedDelimiter);
      CHECK(e.line >= 1);
      CHECK(e.col >= 1);
    }
  }
}

TEST_CASE("unterminated strings report a typed error") {
  try {
    parse_record("{ Defin \"no close\n}");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.kind == ParseErrorKind::UnterminatedString);
    CHECK(e.line == 1);
  }
}

TEST_CASE("empty attribute names report a typed error") {
  try {
    parse_record("{ \"\" x }");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.kind == ParseErrorKind::EmptyAttributeName);
  }
}

TEST_CASE("string escapes round-trip") {
  Record r;
  r.add("Defin", Value::atom("say \"hi\" and \\ back"));
  CHECK(parse_record(serialize_record(r)) == r);
}

TEST_CASE("property: random records round-trip and parse deterministically") {
  std::mt19937 rng(20260808);
  for (int i = 0; i < 200; ++i) {
    Record r = test::random_record(rng);
    std::string text = serialize_record(r);
    Record back = parse_record(text);
    CHECK(back == r);
    CHECK(parse_record(text) == back);
  }
}

TEST_CASE("every fixture file round-trips through parse and serialize") {
  for (const char* name : {"lexicon.rec", "morphemes.rec", "paradigms.rec", "weights.rec",
                           "flattening.rec", "conversion_linked.rec", "runons_small.rec"}) {
    std::vector<Record> recs = parse_records(test::slurp(test::data_file(name)));
    for (const Record& r : recs) {
      CAPTURE(name);
      CHECK(parse_record(serialize_record(r)) == r);
    }
  }
}

TEST_CASE("parse_records reads a stream of top-level records") {
  auto recs = parse_records("{ A x }\n// note\n{ B y }");
  REQUIRE(recs.size() == 2);
  CHECK(recs[0].atom("A") == "x");
  CHECK(recs[1].atom("B") == "y");
  CHECK(parse_records("").empty());
  CHECK(parse_records("  // only a comment\n").empty());
}
