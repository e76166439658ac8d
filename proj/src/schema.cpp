#include "bdi/schema.hpp"

#include <algorithm>
#include <stdexcept>

#include "bdi/vocab.hpp"

namespace bdi {

using vocab::bdi;

const ClassDescriptor* SchemaRegistry::find_class(const Iri& iri) const {
  auto it = classes_.find(iri);
  return it == classes_.end() ? nullptr : &it->second;
}

const PropertyDescriptor* SchemaRegistry::find_property(const Iri& iri) const {
  auto it = properties_.find(iri);
  return it == properties_.end() ? nullptr : &it->second;
}

const ClassDescriptor& SchemaRegistry::lookup_class(const Iri& iri) const {
  if (const auto* c = find_class(iri)) return *c;
  throw std::out_of_range("unregistered class " + iri.str());
}

const PropertyDescriptor& SchemaRegistry::lookup_property(const Iri& iri) const {
  if (const auto* p = find_property(iri)) return *p;
  throw std::out_of_range("unregistered property " + iri.str());
}

bool SchemaRegistry::is_external(const Iri& iri) const {
  return vocab::in_namespace(iri, vocab::kDulNs) || vocab::in_namespace(iri, vocab::kD0Ns);
}

bool SchemaRegistry::is_subclass_of(const Iri& sub, const Iri& super) const {
  if (sub == super) return true;
  const auto closure = superclass_closure(sub);
  return std::find(closure.begin(), closure.end(), super) != closure.end();
}

std::vector<Iri> SchemaRegistry::superclass_closure(const Iri& cls) const {
  std::vector<Iri> out;
  std::vector<Iri> stack{cls};
  std::set<Iri> seen{cls};
  while (!stack.empty()) {
    Iri c = std::move(stack.back());
    stack.pop_back();
    const auto* d = find_class(c);
    if (!d) continue;
    for (const auto& s : d->superclasses) {
      if (is_external(s) || !seen.insert(s).second) continue;
      out.push_back(s);
      stack.push_back(s);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Iri> SchemaRegistry::superproperty_closure(const Iri& prop) const {
  std::vector<Iri> out;
  std::vector<Iri> stack{prop};
  std::set<Iri> seen{prop};
  while (!stack.empty()) {
    Iri p = std::move(stack.back());
    stack.pop_back();
    const auto* d = find_property(p);
    if (!d) continue;
    for (const auto& s : d->superproperties) {
      if (!seen.insert(s).second) continue;
      out.push_back(s);
      stack.push_back(s);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<Iri> SchemaRegistry::registered_equivalent(const Iri& external) const {
  auto it = equivalent_index_.find(external);
  if (it == equivalent_index_.end()) return std::nullopt;
  return it->second;
}

std::set<Iri> SchemaRegistry::types_of(const Graph& g, const Term& node) const {
  std::set<Iri> out;
  for (const auto& t : g.objects(node, vocab::type())) {
    const auto* cls = as_iri(t);
    if (!cls) continue;
    out.insert(*cls);
    if (auto eq = registered_equivalent(*cls)) {
      out.insert(*eq);
      for (auto& s : superclass_closure(*eq)) out.insert(std::move(s));
    }
    for (auto& s : superclass_closure(*cls)) out.insert(std::move(s));
  }
  return out;
}

bool SchemaRegistry::has_type(const Graph& g, const Term& node, const Iri& cls) const {
  return types_of(g, node).count(cls) != 0;
}

std::size_t SchemaRegistry::depth(const Iri& cls) const {
  const auto* d = find_class(cls);
  if (!d) return 0;
  std::size_t best = 0;
  for (const auto& s : d->superclasses) {
    if (is_external(s)) continue;
    best = std::max(best, depth(s) + 1);
  }
  return best;
}

void SchemaRegistry::add_class(ClassDescriptor c) {
  for (const auto& e : c.equivalents) equivalent_index_[e] = c.iri;
  Iri key = c.iri;
  classes_[key] = std::move(c);
}

void SchemaRegistry::add_property(PropertyDescriptor p) {
  Iri key = p.iri;
  properties_[key] = std::move(p);
}

void SchemaRegistry::add_restriction(Restriction r) { restrictions_.push_back(std::move(r)); }

Graph SchemaRegistry::to_graph() const {
  Graph g;
  g.prefixes() = vocab::standard_prefixes();
  g.prefixes()["dul"] = std::string(vocab::kDulNs);
  g.prefixes()["d0"] = std::string(vocab::kD0Ns);
  const Iri owl_class = vocab::owl("Class");
  const Iri obj_prop = vocab::owl("ObjectProperty");
  const Iri sub_class = vocab::rdfs("subClassOf");
  const Iri sub_prop = vocab::rdfs("subPropertyOf");

  for (const auto& [iri, c] : classes_) {
    g.insert(iri, vocab::type(), owl_class);
    for (const auto& s : c.superclasses) g.insert(iri, sub_class, s);
    for (const auto& e : c.equivalents) g.insert(iri, vocab::owl("equivalentClass"), e);
    for (const auto& d : c.disjoint_with) g.insert(iri, vocab::owl("disjointWith"), d);
    for (const auto& [prop, bound] : c.cardinalities) {
      // Cardinalities are written as skolemized restriction nodes.
      BlankNode node{"card_" + std::string(iri.local_name()) + "_" + std::string(prop.local_name())};
      g.insert(iri, sub_class, node);
      g.insert(node, vocab::type(), vocab::owl("Restriction"));
      g.insert(node, vocab::owl("onProperty"), prop);
      g.insert(node, vocab::owl("onClass"), bound.on_class);
      if (bound.min && bound.max && *bound.min == *bound.max) {
        g.insert(node, vocab::owl("qualifiedCardinality"),
                 Literal(std::to_string(*bound.min), vocab::xsd("nonNegativeInteger")));
      } else {
        if (bound.min)
          g.insert(node, vocab::owl("minQualifiedCardinality"),
                   Literal(std::to_string(*bound.min), vocab::xsd("nonNegativeInteger")));
        if (bound.max)
          g.insert(node, vocab::owl("maxQualifiedCardinality"),
                   Literal(std::to_string(*bound.max), vocab::xsd("nonNegativeInteger")));
      }
    }
  }
  for (const auto& [iri, p] : properties_) {
    g.insert(iri, vocab::type(), obj_prop);
    if (p.transitive) g.insert(iri, vocab::type(), vocab::owl("TransitiveProperty"));
    for (const auto& s : p.superproperties) g.insert(iri, sub_prop, s);
    if (p.inverse) g.insert(iri, vocab::owl("inverseOf"), *p.inverse);
    if (p.domain) g.insert(iri, vocab::rdfs("domain"), *p.domain);
    if (p.range) g.insert(iri, vocab::rdfs("range"), *p.range);
    if (p.alias_of) g.insert(iri, vocab::owl("equivalentProperty"), *p.alias_of);
  }
  std::size_t n = 0;
  for (const auto& r : restrictions_) {
    BlankNode node{"restriction_" + std::to_string(n++)};
    g.insert(r.on_class, sub_class, node);
    g.insert(node, vocab::type(), vocab::owl("Restriction"));
    g.insert(node, vocab::owl("onProperty"), r.property);
    const Iri how = r.kind == Restriction::Kind::Universal ? vocab::owl("allValuesFrom") : vocab::owl("someValuesFrom");
    for (const auto& f : r.fillers) g.insert(node, how, f);
  }
  return g;
}

// ---------------------------------------------------------------------------

namespace {

struct PropSpec {
  const char* name;
  std::vector<const char*> supers;
  const char* inverse;
  bool transitive;
  const char* domain;
  const char* range;
};

Iri opt_bdi(const char* name) { return bdi(name); }

SchemaRegistry build() {
  SchemaRegistry reg;
  using vocab::d0;
  using vocab::dul;

  std::map<std::string, ClassDescriptor> classes;
  auto cls = [&](const char* name, std::vector<Iri> supers, std::vector<Iri> equivalents = {}) {
    ClassDescriptor& c = classes[name];
    c.iri = bdi(name);
    c.superclasses = std::move(supers);
    c.equivalents = std::move(equivalents);
  };

  // World, agents and mental entities
  cls("WorldState", {d0("Eventuality")});
  cls("MentalEntity", {d0("CognitiveEntity")});
  cls("Agent", {dul("Agent")});
  // Mental states
  cls("MentalState", {bdi("MentalEntity")});
  cls("Belief", {bdi("MentalState")});
  cls("Desire", {bdi("MentalState")});
  cls("Intention", {bdi("MentalState")});
  // Dynamics
  cls("MentalProcess", {d0("Activity"), bdi("MentalEntity")});
  cls("BeliefProcess", {bdi("MentalProcess")});
  cls("DesireProcess", {bdi("MentalProcess")});
  cls("IntentionProcess", {bdi("MentalProcess")});
  cls("Justification", {dul("Description")});
  // Goals and planning
  cls("Plan", {dul("Plan")});
  cls("Goal", {dul("Goal")});
  cls("Planning", {bdi("MentalProcess")});
  cls("Task", {dul("Task")});
  cls("PlanExecution", {dul("PlanExecution")});
  cls("Action", {dul("Action")});
  // Temporal reasoning
  cls("TemporalEntity", {dul("Region")});
  cls("TimeInstant", {bdi("TemporalEntity")});
  cls("TimeInterval", {bdi("TemporalEntity")}, {dul("TimeInterval")});

  auto disjoint = [&](const char* a, const char* b) {
    classes.at(a).disjoint_with.push_back(bdi(b));
    classes.at(b).disjoint_with.push_back(bdi(a));
  };
  disjoint("Belief", "Desire");
  disjoint("Belief", "Intention");
  disjoint("Desire", "Intention");
  disjoint("MentalState", "MentalProcess");
  disjoint("TimeInstant", "TimeInterval");

  auto& interval = classes.at("TimeInterval");
  interval.cardinalities[bdi("hasStartTime")] = CardinalityBound{1, 1, bdi("TimeInstant")};
  interval.cardinalities[bdi("hasEndTime")] = CardinalityBound{std::nullopt, 1, bdi("TimeInstant")};
  for (auto& [name, c] : classes) reg.add_class(std::move(c));

  const std::vector<PropSpec> props = {
      {"perceives", {}, "isPerceivedBy", false, "Agent", "WorldState"},
      {"isPerceivedBy", {}, "perceives", false, "WorldState", "Agent"},
      {"cognises", {}, nullptr, false, "Agent", "MentalEntity"},
      {"refersTo", {}, nullptr, false, "MentalEntity", "WorldState"},
      {"hasPart", {}, "isPartOf", true, nullptr, nullptr},
      {"isPartOf", {}, "hasPart", true, nullptr, nullptr},
      {"hasMentalState", {}, "isMentalStateOf", false, "Agent", "MentalState"},
      {"isMentalStateOf", {}, "hasMentalState", false, "MentalState", "Agent"},
      {"hasBelief", {"hasMentalState"}, "isBeliefOf", false, "Agent", "Belief"},
      {"isBeliefOf", {"isMentalStateOf"}, "hasBelief", false, "Belief", "Agent"},
      {"hasDesire", {"hasMentalState"}, "isDesireOf", false, "Agent", "Desire"},
      {"isDesireOf", {"isMentalStateOf"}, "hasDesire", false, "Desire", "Agent"},
      {"hasIntention", {"hasMentalState"}, "isIntentionOf", false, "Agent", "Intention"},
      {"isIntentionOf", {"isMentalStateOf"}, "hasIntention", false, "Intention", "Agent"},
      {"motivates", {}, "isMotivatedBy", false, "Belief", "Desire"},
      {"isMotivatedBy", {}, "motivates", false, "Desire", "Belief"},
      {"supports", {}, "isSupportedBy", false, "Belief", "Intention"},
      {"isSupportedBy", {}, "supports", false, "Intention", "Belief"},
      {"fulfils", {}, nullptr, false, "Intention", "Desire"},
      {"isProcessedBy", {}, nullptr, false, "MentalProcess", "Agent"},
      {"reasonsUpon", {}, nullptr, false, "MentalProcess", "MentalState"},
      {"isTriggeredBy", {}, "triggers", false, "MentalProcess", nullptr},
      {"triggers", {}, "isTriggeredBy", false, nullptr, "MentalProcess"},
      {"affects", {}, "isAffectedBy", false, "MentalProcess", "MentalState"},
      {"isAffectedBy", {}, "affects", false, "MentalState", "MentalProcess"},
      {"generates", {"affects"}, nullptr, false, nullptr, nullptr},
      {"modifies", {"affects"}, nullptr, false, nullptr, nullptr},
      {"suppresses", {"affects"}, nullptr, false, nullptr, nullptr},
      {"justifies", {}, nullptr, false, "Justification", "MentalEntity"},
      {"specifies", {}, "isSpecifiedBy", false, "Intention", "Plan"},
      {"isSpecifiedBy", {}, "specifies", false, "Plan", "Intention"},
      {"addresses", {}, nullptr, false, nullptr, "Goal"},
      {"defines", {}, nullptr, false, "Planning", "Plan"},
      {"hasComponent", {}, nullptr, false, nullptr, nullptr},
      {"beginsWith", {}, nullptr, false, "Plan", "Task"},
      {"endsWith", {}, nullptr, false, "Plan", "Task"},
      {"follows", {}, "precedes", true, "Task", "Task"},
      {"precedes", {}, "follows", true, "Task", "Task"},
      {"satisfies", {}, nullptr, false, "PlanExecution", "Plan"},
      {"isExecutedBy", {}, nullptr, false, "PlanExecution", "Agent"},
      {"bringsAbout", {}, nullptr, false, nullptr, "WorldState"},
      {"isExecutionOf", {}, nullptr, false, "Action", "Task"},
      {"isPerformedBy", {}, nullptr, false, "Action", "Agent"},
      {"atTime", {}, nullptr, false, nullptr, "TemporalEntity"},
      {"hasValidity", {}, nullptr, false, nullptr, "TemporalEntity"},
      {"hasStartTime", {}, nullptr, false, "TimeInterval", "TimeInstant"},
      {"hasEndTime", {}, nullptr, false, "TimeInterval", "TimeInstant"},
  };
  for (const auto& s : props) {
    PropertyDescriptor p;
    p.iri = bdi(s.name);
    for (const char* sup : s.supers) p.superproperties.push_back(bdi(sup));
    if (s.inverse) p.inverse = opt_bdi(s.inverse);
    p.transitive = s.transitive;
    if (s.domain) p.domain = opt_bdi(s.domain);
    if (s.range) p.range = opt_bdi(s.range);
    reg.add_property(std::move(p));
  }
  {
    PropertyDescriptor alias;
    alias.iri = bdi("fulfills");
    alias.superproperties = {bdi("fulfils")};
    alias.alias_of = bdi("fulfils");
    reg.add_property(std::move(alias));
  }

  auto all = [&](const char* c, const char* p, std::vector<const char*> fillers) {
    Restriction r{Restriction::Kind::Universal, bdi(c), bdi(p), {}};
    for (const char* f : fillers) r.fillers.push_back(bdi(f));
    reg.add_restriction(std::move(r));
  };
  auto some = [&](const char* c, const char* p, const char* filler) {
    reg.add_restriction(Restriction{Restriction::Kind::Existential, bdi(c), bdi(p), {bdi(filler)}});
  };

  all("WorldState", "isPerceivedBy", {"Agent"});
  all("MentalEntity", "hasPart", {"MentalEntity"});
  some("MentalEntity", "refersTo", "WorldState");
  some("Agent", "perceives", "WorldState");
  all("Agent", "cognises", {"MentalEntity"});

  all("MentalState", "hasPart", {"MentalState"});
  some("Agent", "hasMentalState", "MentalState");
  all("Belief", "hasPart", {"Belief"});
  some("Belief", "motivates", "Desire");
  some("Belief", "supports", "Intention");
  all("Desire", "hasPart", {"Desire"});
  all("Intention", "hasPart", {"Intention"});
  some("Desire", "isMotivatedBy", "Belief");
  some("Intention", "fulfils", "Desire");
  some("Intention", "isSupportedBy", "Belief");

  all("MentalProcess", "hasPart", {"MentalProcess"});
  some("MentalProcess", "isProcessedBy", "Agent");
  some("MentalProcess", "reasonsUpon", "MentalState");
  // World states trigger processes in the published fixtures, so they are
  // admitted next to mental entities.
  all("MentalProcess", "isTriggeredBy", {"MentalEntity", "WorldState"});
  some("MentalProcess", "affects", "MentalState");
  all("BeliefProcess", "affects", {"Belief"});
  all("DesireProcess", "affects", {"Desire"});
  all("IntentionProcess", "affects", {"Intention"});

  some("Justification", "justifies", "MentalEntity");

  some("Intention", "specifies", "Plan");
  some("Plan", "addresses", "Goal");
  some("Planning", "defines", "Plan");
  all("Planning", "reasonsUpon", {"Intention"});
  all("Planning", "hasPart", {"Planning"});
  some("Planning", "reasonsUpon", "Intention");

  all("Task", "follows", {"Task"});
  some("Plan", "hasComponent", "Task");
  some("Plan", "beginsWith", "Task");
  some("Plan", "endsWith", "Task");
  some("Plan", "hasPart", "Plan");

  some("PlanExecution", "satisfies", "Plan");
  some("PlanExecution", "addresses", "Goal");
  some("PlanExecution", "hasComponent", "Action");
  some("PlanExecution", "isExecutedBy", "Agent");
  some("PlanExecution", "bringsAbout", "WorldState");
  some("PlanExecution", "atTime", "TemporalEntity");
  some("Action", "isExecutionOf", "Task");
  some("Action", "isPerformedBy", "Agent");
  some("Action", "bringsAbout", "WorldState");
  some("Action", "atTime", "TemporalEntity");

  some("MentalEntity", "atTime", "TemporalEntity");
  some("MentalEntity", "hasValidity", "TemporalEntity");
  return reg;
}

}  // namespace

const SchemaRegistry& load_schema() {
  static const SchemaRegistry reg = build();
  return reg;
}

}  // namespace bdi
