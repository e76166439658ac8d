#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bdi/mental_types.hpp"
#include "bdi/rdf.hpp"
#include "bdi/schema.hpp"
#include "bdi/temporal.hpp"

namespace bdi {

class MentalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mints `run:{Kind}_{n}` with one monotone counter per kind.
class Minter {
 public:
  /// Counters resume after the highest `run:{Kind}_{n}` already in `g`.
  static Minter scan(const Graph& g);

  Iri mint(const std::string& kind);
  const std::map<std::string, std::uint64_t>& counters() const { return last_; }

 private:
  std::map<std::string, std::uint64_t> last_;
};

/// `run:Instant_<compact UTC>` carrying the instant as rdf:value.
Iri instant_iri(const TimeInstant& t);

enum class LinkRelation { Motivates, Supports, Fulfils };

std::string_view to_string(LinkRelation r);
std::optional<LinkRelation> link_relation_from(std::string_view name);

struct MentalStateRecord {
  Iri id;
  Iri agent;
  StateKind kind;
  Iri refers_to;
  Iri validity;
  std::vector<Iri> parts;
};

struct ProcessRecord {
  Iri id;
  Iri agent;
  ProcessKind kind;
  std::vector<Iri> reasons_upon;
  std::optional<Iri> triggered_by;
  std::vector<std::pair<EffectKind, Iri>> effects;
  TimeInstant at;
};

struct JustificationRecord {
  Iri id;
  std::vector<Iri> justifies;
  Literal text;
};

struct PlanRecord {
  Iri id;
  Iri specified_by;
  Iri goal;
  std::vector<Iri> tasks;
};

/// Single-writer API that creates and evolves mental entities in a graph.
/// Every operation checks its typing preconditions against the schema before
/// touching the graph, so a thrown MentalError leaves the graph unchanged.
class MentalSession {
 public:
  MentalSession(Graph& g, const SchemaRegistry& reg, Minter minter = {});

  Graph& graph() { return g_; }
  const Graph& graph() const { return g_; }
  const Minter& minter() const { return minter_; }

  ProcessRecord create_process(const Iri& agent, ProcessKind kind, const TimeInstant& at,
                               const std::optional<Term>& triggered_by = std::nullopt,
                               const std::vector<Iri>& reasons_upon = {});

  MentalStateRecord assert_state(const Iri& agent, StateKind kind, const Iri& refers_to, const TimeInstant& from,
                                 const Iri& via);

  /// Forward triple plus its inverse where one exists.
  std::vector<Triple> link_states(const Iri& src, LinkRelation rel, const Iri& dst);

  /// Closes the state's open validity interval at `at`.
  std::vector<Triple> suppress_state(const Iri& state, const Iri& via, const TimeInstant& at);

  /// Suppresses `old` and generates a same-kind successor valid from `at`.
  MentalStateRecord modify_state(const Iri& old, const Iri& via, const TimeInstant& at,
                                 const std::optional<Iri>& refers_to = std::nullopt);

  JustificationRecord justify(const std::vector<Iri>& entities, const std::string& text);

  PlanRecord define_plan(const Iri& via, const Iri& intention, const Iri& goal, const std::vector<Iri>& tasks);

  /// Meronomy between same-kind mental states.
  void add_part(const Iri& whole, const Iri& part);

  /// Arbitrary triple, refusing mental-state links to goals.
  bool emit(const Triple& t);

  std::optional<StateKind> state_kind(const Term& node) const;
  std::optional<ProcessKind> process_kind(const Term& node) const;
  bool is_a(const Term& node, std::string_view bdi_class) const;
  /// Agent holding `state`, from either direction of the holder links.
  std::optional<Iri> holder_of(const Iri& state) const;

 private:
  Iri instant(const TimeInstant& t);

  Graph& g_;
  const SchemaRegistry& reg_;
  Minter minter_;
};

// ---------------------------------------------------------------------------
// Explanation

struct ExplainNode {
  Term term;
  std::string relation;  // edge from the parent; empty at the root
  std::optional<Iri> cls;
  std::string label;
  bool cycle = false;   // reached again along its own ancestry
  bool shared = false;  // already expanded elsewhere in the tree
  std::vector<ExplainNode> children;
};

struct Explanation {
  ExplainNode root;
  bool truncated = false;
  std::size_t node_count = 0;
};

/// Walks motivation, support, fulfilment, generation, triggering,
/// justification and reference edges back from `entity`.
Explanation explain(const Term& entity, const Graph& g, const SchemaRegistry& reg, std::size_t max_nodes = 500);

std::string explanation_json(const Explanation& e, const PrefixMap& prefixes);
std::string explanation_dot(const Explanation& e, const PrefixMap& prefixes);
std::string explanation_text(const Explanation& e, const PrefixMap& prefixes);

}  // namespace bdi
