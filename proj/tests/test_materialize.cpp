#include <random>

#include "doctest.h"
#include "support.hpp"

using namespace bdi;
using bdi::test::B;
using bdi::test::ex;

namespace {
Graph of(std::initializer_list<Triple> ts) {
  Graph g;
  for (const auto& t : ts) g.insert(t);
  return g;
}
}  // namespace

TEST_CASE("generates propagates to affects and its inverse") {
  const auto out = materialize(of({Triple(ex("p"), B("generates"), ex("b"))}), load_schema());
  CHECK(out.has(ex("p"), B("affects"), ex("b")));
  CHECK(out.has(ex("b"), B("isAffectedBy"), ex("p")));
  CHECK(out.has(ex("p"), vocab::type(), B("MentalProcess")));
  CHECK(out.has(ex("b"), vocab::type(), B("MentalState")));
}

TEST_CASE("subclass chain") {
  const auto out = materialize(of({Triple(ex("b"), vocab::type(), B("Belief"))}), load_schema());
  CHECK(out.has(ex("b"), vocab::type(), B("MentalState")));
  CHECK(out.has(ex("b"), vocab::type(), B("MentalEntity")));
  // Upper-ontology parents stay opaque.
  CHECK_FALSE(out.has(ex("b"), vocab::type(), vocab::d0("CognitiveEntity")));
  CHECK(out.size() == 3);
}

TEST_CASE("transitive follows") {
  const auto out = materialize(
      of({Triple(ex("t1"), B("follows"), ex("t2")), Triple(ex("t2"), B("follows"), ex("t3"))}), load_schema());
  CHECK(out.has(ex("t1"), B("follows"), ex("t3")));
  CHECK(out.has(ex("t3"), B("precedes"), ex("t1")));
}

TEST_CASE("equivalent external class") {
  const auto out = materialize(of({Triple(ex("i"), vocab::type(), vocab::dul("TimeInterval"))}), load_schema());
  CHECK(out.has(ex("i"), vocab::type(), B("TimeInterval")));
  CHECK(out.has(ex("i"), vocab::type(), B("TemporalEntity")));
}

TEST_CASE("fulfills alias normalizes to fulfils") {
  const auto out = materialize(of({Triple(ex("i"), B("fulfills"), ex("d"))}), load_schema());
  CHECK(out.has(ex("i"), B("fulfils"), ex("d")));
  CHECK(out.has(ex("d"), vocab::type(), B("Desire")));
}

TEST_CASE("literal objects get no inverse or range typing") {
  const auto out = materialize(of({Triple(ex("s"), B("hasPart"), Literal::plain("x"))}), load_schema());
  CHECK(out.size() == 1);
}

TEST_CASE("transitivity reaches literal objects") {
  const auto out = materialize(
      of({Triple(ex("z"), B("hasPart"), ex("a")), Triple(ex("a"), B("hasPart"), Literal::plain("x"))}), load_schema());
  CHECK(out.has(ex("z"), B("hasPart"), Literal::plain("x")));
}

TEST_CASE("properties on random graphs") {
  const auto& reg = load_schema();
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 300; ++i) {
    const auto g = bdi::test::random_schema_graph(rng, reg);
    DerivationLog log;
    const auto m = materialize(g, reg, &log);
    // Monotone and idempotent.
    for (const auto& t : g) CHECK(m.contains(t));
    CHECK(materialize(m, reg).same_triples(m));
    // Equal to the naive fixpoint.
    CHECK(m.same_triples(bdi::test::closure_oracle(g, reg)));
    // Every added triple has exactly one logged derivation and the log replays.
    CHECK(log.size() == m.size() - g.size());
    CHECK(replay(g, log, reg).same_triples(m));
    // Serial and parallel rounds agree triple for triple.
    DerivationLog plog;
    CHECK(materialize(g, reg, &plog, Execution::Parallel).same_triples(m));
    CHECK(plog.size() == log.size());
  }
}

TEST_CASE("monotone in the input") {
  const auto& reg = load_schema();
  std::mt19937_64 rng(99);
  for (int i = 0; i < 100; ++i) {
    const auto g = bdi::test::random_schema_graph(rng, reg);
    Graph sub;
    for (const auto& t : g)
      if (rng() % 2) sub.insert(t);
    const auto big = materialize(g, reg);
    for (const auto& t : materialize(sub, reg)) CHECK(big.contains(t));
  }
}

TEST_CASE("replay rejects a tampered log") {
  const auto& reg = load_schema();
  const auto g = of({Triple(ex("p"), B("generates"), ex("b"))});
  DerivationLog log;
  materialize(g, reg, &log);
  REQUIRE_FALSE(log.empty());
  auto bad = log;
  bad.front().conclusion = Triple(ex("p"), B("suppresses"), ex("b"));
  CHECK_THROWS_AS(replay(g, bad, reg), std::logic_error);
  auto missing = log;
  missing.front().premises = {Triple(ex("q"), B("generates"), ex("b"))};
  CHECK_THROWS_AS(replay(g, missing, reg), std::logic_error);
}

TEST_CASE("incremental closure matches a full rebuild") {
  const auto& reg = load_schema();
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    const auto a = bdi::test::random_schema_graph(rng, reg, 30);
    const auto b = bdi::test::random_schema_graph(rng, reg, 30);
    auto closed = materialize(a, reg);
    std::vector<Triple> added;
    for (const auto& t : b)
      if (closed.insert(t)) added.push_back(t);
    close_incremental(closed, added, reg);
    Graph both = a;
    both.insert_all(b);
    CHECK(closed.same_triples(materialize(both, reg)));
  }
}
