#include "doctest.h"
#include "bdi/rules.hpp"
#include "support.hpp"

using namespace bdi;
using bdi::test::B;
using bdi::test::ex;

namespace {
const PrefixMap kPm = {{"bdi", std::string(vocab::kBdiNs)}, {"rdf", std::string(vocab::kRdfNs)},
                       {"ex", "http://example.org/t/"}};

std::size_t error_line(const std::string& text) {
  try {
    parse_rules(text, kPm);
  } catch (const RuleError& e) {
    return e.line();
  }
  return 0;
}
}  // namespace

TEST_CASE("grammar smoke test") {
  const auto rs = parse_rules("(?b rdf:type bdi:Belief) / (?b bdi:refersTo ?w) >> assert_desire(?b) .", kPm);
  REQUIRE(rs.rules.size() == 1);
  const auto& r = rs.rules[0];
  CHECK(r.id == "r1");
  CHECK(r.priority == 0);
  CHECK(r.bound_variables() == std::vector<std::string>{"b", "w"});
  REQUIRE(r.tail.size() == 1);
  CHECK(r.tail[0].kind == ActionKind::AssertState);
  CHECK(r.tail[0].state_kind == StateKind::Desire);
}

TEST_CASE("shipped rule files") {
  const auto hotel = read_rules_file(bdi::test::fixture("hotel.rules"));
  REQUIRE(hotel.rules.size() == 3);
  CHECK(hotel.rules[0].id == "form_desire");
  CHECK(hotel.rules[1].id == "location_contradiction");
  CHECK(hotel.rules[1].priority == 10);
  CHECK(hotel.rules[2].tail[0].kind == ActionKind::DefinePlan);
  const auto zelle = read_rules_file(bdi::test::fixture("zelle.rules"));
  CHECK(zelle.rules.size() == 3);
  CHECK(zelle.prefixes.at("bdi") == std::string(vocab::kBdiNs));
}

TEST_CASE("conditions") {
  const auto rs = parse_rules(
      "@id x @priority -2\n"
      "(?a bdi:hasBelief ?b) / not(?b bdi:refersTo ex:w) & not((?b a bdi:Desire)) & valid_at(?b, NOW)\n"
      "  & valid_at(?b, \"2025-01-01T00:00:00Z\"^^<http://www.w3.org/2001/XMLSchema#dateTime>) & (?s ?p ?o)\n"
      "  >> emit(?b, bdi:refersTo, ex:w) ; justify(?a, ?b, \"because ?b\") as ?j ; suppress(?b) .",
      kPm);
  const auto& r = rs.rules.at(0);
  CHECK(r.id == "x");
  CHECK(r.priority == -2);
  REQUIRE(r.conditions.size() == 5);
  CHECK(r.conditions[0].negated);
  CHECK(r.conditions[1].negated);
  CHECK(r.conditions[2].kind == Condition::Kind::ValidAt);
  CHECK_FALSE(r.conditions[2].instant);
  CHECK(r.conditions[3].instant);
  CHECK(r.tail[1].text == "because ?b");
  CHECK(r.tail[1].args.size() == 2);
  CHECK(r.tail[1].bind_as == "j");
}

TEST_CASE("range restriction") {
  CHECK(error_line("(?b a bdi:Belief) >> assert_desire(?x) .") == 1);
  // A variable only under not() does not bind.
  CHECK(error_line("(?b a bdi:Belief) / not(?b bdi:refersTo ?w) >> emit(?b, bdi:refersTo, ?w) .") == 1);
  // Unbound variables inside the justification text.
  CHECK(error_line("(?b a bdi:Belief) >> justify(?b, \"see ?nothing\") .") == 1);
  // Bound by an earlier action.
  CHECK(error_line("(?b a bdi:Belief) >> assert_desire(?b) as ?d ; link(motivates, ?b, ?d) .") == 0);
  CHECK(error_line("(?b a bdi:Belief) >> link(motivates, ?b, ?d) ; assert_desire(?b) as ?d .") == 1);
  CHECK(error_line("(?b a bdi:Belief) >> assert_desire(?b) as ?b .") == 1);
}

TEST_CASE("syntax errors") {
  CHECK(error_line("not(?b a bdi:Belief) >> assert_desire(?b) .") == 1);
  CHECK(error_line("(?b a bdi:Belief) / not(not(?b a bdi:Desire)) >> assert_desire(?b) .") == 1);
  CHECK(error_line("\n(?b ?p bdi:Belief) >> assert_desire(?b) .") == 2);
  CHECK(error_line("(\"lit\" a bdi:Belief) >> emit(?b, bdi:x, ?b) .") == 1);
  CHECK(error_line("(?b a bdi:Belief) >> teleport(?b) .") == 1);
  CHECK(error_line("(?b a bdi:Belief) >> suppress(?b) as ?x .") == 1);
  CHECK(error_line("(?b a bdi:Belief) >> link(causes, ?b, ?b) .") == 1);
  CHECK(error_line("(?b a bdi:Belief) >> assert_desire(?b)") == 1);
  CHECK(error_line("(?b a nope:Belief) >> assert_desire(?b) .") == 1);
  CHECK(error_line("@id a (?b a bdi:Belief) >> assert_desire(?b) .\n@id a (?b a bdi:Belief) >> assert_desire(?b) .") == 2);
  CHECK(error_line("(?b a bdi:Belief) >> emit(?b, bdi:x) .") == 1);
}

TEST_CASE("prefixes declared in the file") {
  const auto rs = parse_rules("PREFIX q: <http://q/>\n@prefix r: <http://r/> .\n(?x q:p ?y) >> emit(?x, r:p, ?y) .");
  REQUIRE(rs.rules.size() == 1);
  CHECK(std::get<Term>(rs.rules[0].head.predicate) == Term(Iri("http://q/p")));
}

TEST_CASE("pattern matching") {
  Graph g;
  g.insert(ex("a"), B("hasBelief"), ex("b1"));
  g.insert(ex("a"), B("hasBelief"), ex("b2"));
  g.insert(ex("b1"), B("refersTo"), ex("w"));
  const Pattern p1{Variable{"a"}, Term(B("hasBelief")), Variable{"b"}};
  const Pattern p2{Variable{"b"}, Term(B("refersTo")), Variable{"w"}};
  const auto sols = solve({p1, p2}, g);
  REQUIRE(sols.size() == 1);
  CHECK(sols[0].at("b") == Term(ex("b1")));
  CHECK(solve({p1}, g).size() == 2);

  Bindings b{{"b", ex("b2")}};
  CHECK_FALSE(unify(p2, Triple(ex("b1"), B("refersTo"), ex("w")), b));
  CHECK(b.size() == 1);
  const Pattern same{Variable{"x"}, Term(B("p")), Variable{"x"}};
  Bindings c;
  CHECK_FALSE(unify(same, Triple(ex("s"), B("p"), ex("o")), c));
  CHECK(c.empty());
  CHECK(unify(same, Triple(ex("s"), B("p"), ex("s")), c));
  CHECK(canonical_key({{"b", ex("x")}, {"a", Literal::plain("1")}}) == "?a=\"1\";?b=<http://example.org/t/x>");
}
