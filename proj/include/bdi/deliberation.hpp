#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "bdi/mental_graph.hpp"
#include "bdi/rules.hpp"
#include "bdi/schema.hpp"
#include "bdi/temporal.hpp"

namespace bdi {

enum class Provenance { Ingested, Derived, Builtin };

std::string_view to_string(Provenance p);

struct BeliefAtom {
  Triple triple;
  Provenance provenance = Provenance::Ingested;
  std::string rule;  // Derived only
  std::uint64_t seq = 0;
  TimeInstant at;
};

struct TraceEvent {
  std::size_t cycle = 0;
  std::string rule;
  Bindings bindings;
  Iri process;
};

/// FNV-1a 64-bit over the canonical binding string.
std::uint64_t binding_hash(const Bindings& b);
std::string binding_hash_hex(const Bindings& b);

struct KBState {
  struct Meta {
    Provenance provenance = Provenance::Ingested;
    std::string rule;
    std::uint64_t seq = 0;
    TimeInstant at;
  };

  Graph atoms;
  std::map<Triple, Meta> meta;
  std::set<std::pair<std::string, std::string>> fired;  // (rule id, binding hash)
  std::vector<TraceEvent> trace;
  TimeInstant clock_start;
  std::uint64_t firings = 0;  // logical clock: firing n happens at clock_start + (n-1) s
  std::uint64_t next_seq = 0;
  Minter minter;

  std::size_t size() const { return atoms.size(); }
  std::vector<BeliefAtom> atom_list() const;
  /// Atom set equality, ignoring provenance.
  bool same_atoms(const KBState& other) const { return atoms.same_triples(other.atoms); }
};

TimeInstant default_clock_start();

/// One atom per triple in graph order. Refractoriness keys recorded by an
/// earlier export (run:firedRule / run:bindingKey) are restored.
KBState ingest(const Graph& g, const TimeInstant& clock_start = default_clock_start());

enum class RunStatus { Quiescent, CycleLimit, Failed };

std::string_view to_string(RunStatus s);

struct RunOptions {
  std::size_t max_cycles = 1000;
  Execution exec = Execution::Serial;
  const TimeMap* timemap = nullptr;
  /// Re-close the KB under the schema after every firing.
  bool materialize = true;
};

struct RunResult {
  RunStatus status = RunStatus::Quiescent;
  std::size_t cycles = 0;
  std::string error;
  bool bound_reached() const { return status == RunStatus::CycleLimit; }
};

/// A candidate firing.
struct Instance {
  const Rule* rule = nullptr;
  Bindings bindings;
  std::vector<Triple> matched;  // head atom first, then positive conditionals
};

/// All unfired instances, best first: priority desc, rule id asc, bindings asc.
std::vector<Instance> agenda(const KBState& kb, const RuleSet& rules, const RunOptions& opts);

/// Match-resolve-act cycles, one firing per cycle. On an action failure the
/// failing firing is discarded and the KB keeps every earlier firing.
RunResult run(KBState& kb, const RuleSet& rules, const RunOptions& opts = {});

/// Every atom as a triple, with the KB's prefixes plus `run:`.
Graph export_graph(const KBState& kb);

/// One JSON object per line: {"bindings":{...},"cycle":n,"process":"...","rule":"..."}.
std::string trace_jsonl(const std::vector<TraceEvent>& trace);

}  // namespace bdi
