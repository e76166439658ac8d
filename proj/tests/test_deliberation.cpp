#include "doctest.h"
#include "bdi/deliberation.hpp"
#include "support.hpp"

using namespace bdi;
using bdi::test::B;
using bdi::test::ex;

namespace {
Iri zx(const char* local) { return Iri(std::string("http://example.org/bdi-demo/") + local); }

struct Scenario {
  KBState kb;
  RuleSet rules;
  TimeMap tm;
  RunResult result;
};

Scenario run_fixture(const char* ttl, const char* rules, RunOptions opts = {}) {
  Scenario s;
  s.tm = TimeMap::load(bdi::test::fixture("timemap.toml"));
  const auto g = materialize(bdi::test::load(ttl), load_schema());
  s.kb = ingest(g);
  s.rules = read_rules_file(bdi::test::fixture(rules), g.prefixes());
  opts.timemap = &s.tm;
  s.result = run(s.kb, s.rules, opts);
  return s;
}
}  // namespace

TEST_CASE("binding hash is fnv-1a over the canonical key") {
  // FNV-1a 64 of the empty string is the offset basis.
  CHECK(binding_hash({}) == 0xcbf29ce484222325ULL);
  CHECK(binding_hash_hex({}) == "cbf29ce484222325");
  // "a" hashes to 0xaf63dc4c8601ec8c; "?a=<urn:x>" is fixed by the key format.
  Bindings b{{"a", Iri("urn:x")}};
  CHECK(binding_hash_hex(b).size() == 16);
  CHECK(binding_hash(b) != binding_hash({{"a", Iri("urn:y")}}));
}

TEST_CASE("ingest") {
  CHECK(ingest(Graph()).size() == 0);
  const auto z = bdi::test::load("zelle.ttl");
  const auto kb = ingest(z);
  CHECK(kb.size() == z.size());
  CHECK(kb.size() == 32);
  for (const auto& a : kb.atom_list()) CHECK(a.provenance == Provenance::Ingested);
  CHECK(kb.trace.empty());
  CHECK(export_graph(ingest(Graph())).empty());
}

TEST_CASE("zelle chain") {
  auto s = run_fixture("zelle_world.ttl", "zelle.rules");
  CHECK(s.result.status == RunStatus::Quiescent);
  CHECK_FALSE(s.result.bound_reached());
  REQUIRE(s.kb.trace.size() == 3);
  CHECK(s.kb.trace[0].rule == "perceive");
  CHECK(s.kb.trace[1].rule == "desire");
  CHECK(s.kb.trace[2].rule == "commit");
  const auto out = export_graph(s.kb);
  const auto b = vocab::run("Belief_1"), d = vocab::run("Desire_1"), i = vocab::run("Intention_1");
  CHECK(out.has(vocab::run("BeliefProcess_1"), B("generates"), b));
  CHECK(out.has(b, B("refersTo"), zx("WorldState_WS_request")));
  CHECK(out.has(b, B("motivates"), d));
  CHECK(out.has(i, B("fulfils"), d));
  CHECK(out.has(b, B("supports"), i));
  CHECK(out.has(vocab::run("BeliefProcess_1"), B("isTriggeredBy"), zx("WorldState_WS_request")));
  CHECK(out.has(vocab::run("IntentionProcess_1"), B("isTriggeredBy"), d));
  CHECK(out.has(zx("Agent_A"), B("hasIntention"), i));
  CHECK(validate(out, load_schema()).clean());
  // One process per trace event.
  CHECK(out.match(std::nullopt, vocab::fired_rule(), std::nullopt).size() == s.kb.trace.size());
  // Derived atoms carry their rule.
  bool derived = false;
  for (const auto& a : s.kb.atom_list())
    if (a.triple == Triple(b, B("refersTo"), zx("WorldState_WS_request"))) derived = a.provenance == Provenance::Derived && a.rule == "perceive";
  CHECK(derived);
}

TEST_CASE("hotel contradiction") {
  auto s = run_fixture("hotel_world.ttl", "hotel.rules");
  CHECK(s.result.status == RunStatus::Quiescent);
  REQUIRE(s.kb.trace.size() == 3);
  CHECK(s.kb.trace[1].rule == "location_contradiction");
  const auto out = export_graph(s.kb);
  const auto j = out.match(std::nullopt, vocab::type(), Term(B("Justification")));
  REQUIRE(j.size() == 1);
  const auto targets = out.objects(j[0].subject, B("justifies"));
  REQUIRE(targets.size() == 1);
  const auto plans = out.objects(targets[0], B("specifies"));
  REQUIRE(plans.size() == 1);
  CHECK(out.has(plans[0], B("addresses"), Iri("https://example.org/bdi-case#Goal_G2")));
  CHECK(validate(out, load_schema()).clean());
}

TEST_CASE("no rules leaves the kb unchanged") {
  const auto g = materialize(bdi::test::load("zelle_world.ttl"), load_schema());
  auto kb = ingest(g);
  const auto r = run(kb, RuleSet{});
  CHECK(r.status == RunStatus::Quiescent);
  CHECK(kb.trace.empty());
  CHECK(export_graph(kb).same_triples(g));
}

TEST_CASE("cycle bound") {
  RunOptions opts;
  opts.max_cycles = 1;
  auto s = run_fixture("zelle_world.ttl", "zelle.rules", opts);
  CHECK(s.kb.trace.size() == 1);
  CHECK(s.result.status == RunStatus::CycleLimit);
  CHECK(s.result.bound_reached());
}

TEST_CASE("conflict resolution order") {
  Graph g;
  for (const char* n : {"w2", "w1", "w3"}) g.insert(ex(n), vocab::type(), B("WorldState"));
  g.insert(ex("a"), vocab::type(), B("Agent"));
  auto kb = ingest(g);
  const auto rules = parse_rules(
      "@prefix bdi: <https://w3id.org/fossr/ontology/bdi/> .\n"
      "@id b (?w a bdi:WorldState) / (?a a bdi:Agent) >> emit(?w, bdi:label2, \"b\") .\n"
      "@id a (?w a bdi:WorldState) / (?a a bdi:Agent) >> emit(?w, bdi:label2, \"a\") .\n"
      "@id z @priority 5 (?w a bdi:WorldState) / (?a a bdi:Agent) >> emit(?w, bdi:label2, \"z\") .\n");
  const auto ag = agenda(kb, rules, {});
  REQUIRE(ag.size() == 9);
  CHECK(ag[0].rule->id == "z");
  CHECK(ag[0].bindings.at("w") == Term(ex("w1")));
  CHECK(ag[2].bindings.at("w") == Term(ex("w3")));
  CHECK(ag[3].rule->id == "a");
  CHECK(ag[6].rule->id == "b");
  RunOptions par;
  par.exec = Execution::Parallel;
  const auto ag2 = agenda(kb, rules, par);
  REQUIRE(ag2.size() == ag.size());
  for (std::size_t i = 0; i < ag.size(); ++i) {
    CHECK(ag2[i].rule == ag[i].rule);
    CHECK(ag2[i].bindings == ag[i].bindings);
  }
  run(kb, rules);
  CHECK(kb.trace.size() == 9);
  CHECK(kb.fired.size() == 9);
}

TEST_CASE("negation as failure sees the state at cycle start") {
  Graph g;
  g.insert(ex("w"), vocab::type(), B("WorldState"));
  g.insert(ex("a"), vocab::type(), B("Agent"));
  auto kb = ingest(g);
  const auto rules = parse_rules(
      "@prefix bdi: <https://w3id.org/fossr/ontology/bdi/> .\n"
      "@id first @priority 1 (?w a bdi:WorldState) / (?a a bdi:Agent) & not(?w bdi:flag ?any)\n"
      "  >> emit(?w, bdi:flag, \"1\") .\n"
      "@id second (?w a bdi:WorldState) / (?a a bdi:Agent) & not(?w bdi:flag ?any) >> emit(?w, bdi:other, \"2\") .\n");
  run(kb, rules);
  REQUIRE(kb.trace.size() == 1);
  CHECK(kb.trace[0].rule == "first");
}

TEST_CASE("valid_at builtin uses the run clock") {
  Graph g;
  g.insert(ex("w"), vocab::type(), B("WorldState"));
  g.insert(ex("w"), B("atTime"), bdi::test::dt("2025-01-01T00:00:00Z"));
  g.insert(ex("v"), vocab::type(), B("WorldState"));
  g.insert(ex("v"), B("atTime"), bdi::test::dt("2024-01-01T00:00:00Z"));
  g.insert(ex("a"), vocab::type(), B("Agent"));
  auto kb = ingest(g);
  const auto rules = parse_rules(
      "@prefix bdi: <https://w3id.org/fossr/ontology/bdi/> .\n"
      "(?w a bdi:WorldState) / (?a a bdi:Agent) & valid_at(?w, NOW) >> emit(?w, bdi:current, \"yes\") .\n");
  run(kb, rules);
  REQUIRE(kb.trace.size() == 1);
  CHECK(kb.trace[0].bindings.at("w") == Term(ex("w")));
}

TEST_CASE("action failure keeps earlier firings") {
  Graph g;
  g.insert(ex("a"), vocab::type(), B("Agent"));
  g.insert(ex("w"), vocab::type(), B("WorldState"));
  g.insert(ex("w"), B("isPerceivedBy"), ex("a"));
  auto kb = ingest(materialize(g, load_schema()));
  const auto rules = parse_rules(
      "@prefix bdi: <https://w3id.org/fossr/ontology/bdi/> .\n"
      "@id ok @priority 1 (?w bdi:isPerceivedBy ?a) >> assert_belief(?a, ?w) as ?b .\n"
      "@id bad (?b a bdi:Belief) >> link(fulfils, ?b, ?b) .\n");
  const auto r = run(kb, rules);
  CHECK(r.status == RunStatus::Failed);
  CHECK(r.error.find("bad") != std::string::npos);
  CHECK(kb.trace.size() == 1);
  CHECK(kb.atoms.has(vocab::run("Belief_1"), vocab::type(), B("Belief")));
}

TEST_CASE("export and re-ingest") {
  auto s = run_fixture("hotel_world.ttl", "hotel.rules");
  const auto out = export_graph(s.kb);
  auto again = ingest(out);
  CHECK(again.same_atoms(s.kb));
  CHECK(again.fired == s.kb.fired);
  CHECK(again.firings == s.kb.firings);
  TimeMap tm = s.tm;
  RunOptions opts;
  opts.timemap = &tm;
  const auto r = run(again, s.rules, opts);
  CHECK(r.status == RunStatus::Quiescent);
  CHECK(again.trace.empty());
  CHECK(export_graph(again).same_triples(out));
}

TEST_CASE("trace lines") {
  auto s = run_fixture("zelle_world.ttl", "zelle.rules");
  const auto text = trace_jsonl(s.kb.trace);
  CHECK(std::count(text.begin(), text.end(), '\n') == 3);
  CHECK(text.rfind("{\"bindings\":{\"a\":\"<http://example.org/bdi-demo/Agent_A>\"", 0) == 0);
  CHECK(text.find("\"process\":\"urn:bdi-run:DesireProcess_1\"") != std::string::npos);
}

TEST_CASE("serial and parallel runs agree") {
  RunOptions par;
  par.exec = Execution::Parallel;
  for (auto [ttl, rules] : {std::pair{"zelle_world.ttl", "zelle.rules"}, std::pair{"hotel_world.ttl", "hotel.rules"}}) {
    auto a = run_fixture(ttl, rules);
    auto b = run_fixture(ttl, rules, par);
    CHECK(serialize_turtle(export_graph(a.kb)) == serialize_turtle(export_graph(b.kb)));
    CHECK(trace_jsonl(a.kb.trace) == trace_jsonl(b.kb.trace));
  }
}
