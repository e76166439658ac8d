#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bdi/rdf.hpp"

namespace bdi {

struct CardinalityBound {
  std::optional<std::size_t> min;
  std::optional<std::size_t> max;
  Iri on_class;
};

struct ClassDescriptor {
  Iri iri;
  std::vector<Iri> superclasses;  // direct; may include external (dul:/d0:) IRIs
  std::vector<Iri> equivalents;   // external classes declared equivalent
  std::vector<Iri> disjoint_with;
  std::map<Iri, CardinalityBound> cardinalities;  // keyed by property
};

struct PropertyDescriptor {
  Iri iri;
  std::vector<Iri> superproperties;
  std::optional<Iri> inverse;
  bool transitive = false;
  std::optional<Iri> domain;
  std::optional<Iri> range;
  /// Set for alternative spellings; the alias is a subproperty of the canonical IRI.
  std::optional<Iri> alias_of;
};

/// Class-level restriction `on_class ⊑ ∀/∃ property.(filler_1 ⊔ ...)`.
struct Restriction {
  enum class Kind { Universal, Existential };
  Kind kind;
  Iri on_class;
  Iri property;
  std::vector<Iri> fillers;
};

class SchemaRegistry {
 public:
  const ClassDescriptor* find_class(const Iri& iri) const;
  const PropertyDescriptor* find_property(const Iri& iri) const;
  const ClassDescriptor& lookup_class(const Iri& iri) const;
  const PropertyDescriptor& lookup_property(const Iri& iri) const;

  const std::map<Iri, ClassDescriptor>& classes() const { return classes_; }
  const std::map<Iri, PropertyDescriptor>& properties() const { return properties_; }
  const std::vector<Restriction>& restrictions() const { return restrictions_; }

  /// Upper-ontology classes referenced by descriptors but not described here.
  bool is_external(const Iri& iri) const;

  /// Reflexive-transitive over registered (non-external) superclasses.
  bool is_subclass_of(const Iri& sub, const Iri& super) const;
  std::vector<Iri> superclass_closure(const Iri& cls) const;
  std::vector<Iri> superproperty_closure(const Iri& prop) const;
  /// Registered class that an external IRI is declared equivalent to.
  std::optional<Iri> registered_equivalent(const Iri& external) const;

  /// Asserted types of `node` closed under the registered hierarchy.
  std::set<Iri> types_of(const Graph& g, const Term& node) const;
  bool has_type(const Graph& g, const Term& node, const Iri& cls) const;

  /// Depth in the registered hierarchy; roots have depth 0.
  std::size_t depth(const Iri& cls) const;

  /// The registry as Turtle-ready RDFS/OWL triples.
  Graph to_graph() const;

  void add_class(ClassDescriptor c);
  void add_property(PropertyDescriptor p);
  void add_restriction(Restriction r);

 private:
  std::map<Iri, ClassDescriptor> classes_;
  std::map<Iri, PropertyDescriptor> properties_;
  std::vector<Restriction> restrictions_;
  std::map<Iri, Iri> equivalent_index_;
};

/// Built-in registry of every class and property axiom of the BDI ontology.
const SchemaRegistry& load_schema();

// ---------------------------------------------------------------------------
// Materialization

enum class InferenceRule { SubClass, Equivalence, SubProperty, Inverse, Transitive, Domain, Range };

const char* to_string(InferenceRule r);

struct DerivationStep {
  InferenceRule rule;
  Triple conclusion;
  std::vector<Triple> premises;
  Iri schema_item;  // the class/property whose axiom licensed the step
};

using DerivationLog = std::vector<DerivationStep>;

enum class Execution { Serial, Parallel };

/// Closure under subclass, equivalence, subproperty, inverse, transitivity and
/// domain/range typing. Idempotent and monotone.
Graph materialize(const Graph& g, const SchemaRegistry& reg, DerivationLog* log = nullptr,
                  Execution exec = Execution::Serial);

/// Extends an already-closed graph after `added` triples were inserted into it.
/// Returns the triples inferred.
std::vector<Triple> close_incremental(Graph& g, const std::vector<Triple>& added, const SchemaRegistry& reg,
                                      DerivationLog* log = nullptr, Execution exec = Execution::Serial);

/// Re-applies a derivation log to its input, checking every step. Throws
/// std::logic_error on a step whose premises are missing or that the schema
/// does not license.
Graph replay(const Graph& input, const DerivationLog& log, const SchemaRegistry& reg);

// ---------------------------------------------------------------------------
// Validation

enum class Severity { Error, Warning };

namespace codes {
inline constexpr const char* kDisjoint = "E-DISJOINT";
inline constexpr const char* kCardinality = "E-CARDINALITY";
inline constexpr const char* kUniversal = "E-UNIVERSAL";
inline constexpr const char* kExistential = "W-EXISTENTIAL";
inline constexpr const char* kUnknownPredicate = "W-UNKNOWN-PREDICATE";
inline constexpr const char* kUnknownClass = "W-UNKNOWN-CLASS";
}  // namespace codes

struct ValidationItem {
  Severity severity;
  std::string code;
  Term subject;
  std::string message;

  auto operator<=>(const ValidationItem&) const = default;
};

struct ValidationReport {
  std::vector<ValidationItem> items;  // sorted by subject, then code

  std::size_t error_count() const;
  std::size_t warning_count() const;
  bool clean() const { return error_count() == 0; }
  std::vector<ValidationItem> with_code(const std::string& code) const;
};

/// Closed-world checks over a materialized graph: universal restrictions,
/// cardinality and disjointness are errors; missing existentials and
/// unregistered bdi: vocabulary are warnings.
ValidationReport validate(const Graph& g, const SchemaRegistry& reg);

std::string format_report(const ValidationReport& report, const PrefixMap& prefixes, bool color);

}  // namespace bdi
