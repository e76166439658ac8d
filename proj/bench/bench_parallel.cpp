// Serial vs parallel agenda matching and materialization rounds.

#include <benchmark/benchmark.h>

#include <random>
#include <string>

#include "bdi/deliberation.hpp"
#include "bdi/rules.hpp"
#include "bdi/schema.hpp"
#include "bdi/vocab.hpp"

using namespace bdi;

namespace {

Iri node(const std::string& kind, std::size_t i) { return Iri("http://example.org/bench/" + kind + std::to_string(i)); }

// Agents perceiving world states; every perception is a perceive-rule instance.
Graph perception_graph(std::size_t agents, std::size_t states) {
  Graph g;
  std::mt19937_64 rng(42);
  for (std::size_t a = 0; a < agents; ++a) g.insert(node("agent", a), vocab::type(), vocab::bdi("Agent"));
  for (std::size_t w = 0; w < states; ++w) {
    g.insert(node("ws", w), vocab::type(), vocab::bdi("WorldState"));
    for (std::size_t a = 0; a < agents; ++a)
      if (rng() % 4 == 0) g.insert(node("ws", w), vocab::bdi("isPerceivedBy"), node("agent", a));
  }
  return g;
}

// Long follows chains plus typed mental entities: many transitive and inverse rounds.
Graph schema_graph(std::size_t n) {
  Graph g;
  for (std::size_t i = 0; i + 1 < n; ++i) g.insert(node("task", i + 1), vocab::bdi("follows"), node("task", i));
  for (std::size_t i = 0; i < n; ++i) {
    g.insert(node("b", i), vocab::type(), vocab::bdi("Belief"));
    g.insert(node("p", i), vocab::bdi("generates"), node("b", i));
    g.insert(node("b", i), vocab::bdi("motivates"), node("d", i));
  }
  return g;
}

const RuleSet& perceive_rules() {
  static const RuleSet rules = parse_rules(
      "PREFIX bdi: <https://w3id.org/fossr/ontology/bdi/>\n"
      "@id perceive (?ws bdi:isPerceivedBy ?a) / (?a a bdi:Agent) & (?ws a bdi:WorldState)"
      " >> assert_belief(?a, ?ws) as ?b .\n");
  return rules;
}

void BM_Agenda(benchmark::State& state, Execution exec) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const KBState kb = ingest(materialize(perception_graph(n, n), load_schema()));
  RunOptions opts;
  opts.exec = exec;
  std::size_t instances = 0;
  for (auto _ : state) {
    const auto a = agenda(kb, perceive_rules(), opts);
    instances = a.size();
    benchmark::DoNotOptimize(a.data());
  }
  state.counters["instances"] = static_cast<double>(instances);
}

void BM_Materialize(benchmark::State& state, Execution exec) {
  const Graph g = schema_graph(static_cast<std::size_t>(state.range(0)));
  std::size_t size = 0;
  for (auto _ : state) {
    const auto m = materialize(g, load_schema(), nullptr, exec);
    size = m.size();
  }
  state.counters["triples"] = static_cast<double>(size);
}

}  // namespace

BENCHMARK_CAPTURE(BM_Agenda, serial, Execution::Serial)->Arg(16)->Arg(64);
BENCHMARK_CAPTURE(BM_Agenda, parallel, Execution::Parallel)->Arg(16)->Arg(64);
BENCHMARK_CAPTURE(BM_Materialize, serial, Execution::Serial)->Arg(32)->Arg(64);
BENCHMARK_CAPTURE(BM_Materialize, parallel, Execution::Parallel)->Arg(32)->Arg(64);

BENCHMARK_MAIN();
