#include "bdi/mental_graph.hpp"

#include <algorithm>
#include <cctype>

#include "bdi/vocab.hpp"

namespace bdi {

Minter Minter::scan(const Graph& g) {
  Minter m;
  auto note = [&](const Term& t) {
    const auto* iri = as_iri(t);
    if (!iri || !vocab::in_namespace(*iri, vocab::kRunNs)) return;
    const std::string local = iri->str().substr(vocab::kRunNs.size());
    const auto us = local.rfind('_');
    if (us == std::string::npos || us + 1 == local.size()) return;
    const std::string digits = local.substr(us + 1);
    if (!std::all_of(digits.begin(), digits.end(), [](unsigned char c) { return std::isdigit(c); })) return;
    if (digits.size() > 18) return;
    auto& slot = m.last_[local.substr(0, us)];
    slot = std::max<std::uint64_t>(slot, std::stoull(digits));
  };
  for (const auto& t : g) {
    note(t.subject);
    note(t.object);
  }
  return m;
}

Iri Minter::mint(const std::string& kind) { return vocab::run(kind + "_" + std::to_string(++last_[kind])); }

Iri instant_iri(const TimeInstant& t) {
  std::string compact;
  for (char c : t.canonical())
    if (c != '-' && c != ':') compact += c;
  return vocab::run("Instant_" + compact);
}

std::string_view to_string(LinkRelation r) {
  switch (r) {
    case LinkRelation::Motivates: return "motivates";
    case LinkRelation::Supports: return "supports";
    case LinkRelation::Fulfils: return "fulfils";
  }
  return "?";
}

std::optional<LinkRelation> link_relation_from(std::string_view name) {
  for (auto r : {LinkRelation::Motivates, LinkRelation::Supports, LinkRelation::Fulfils})
    if (to_string(r) == name) return r;
  if (name == "fulfills") return LinkRelation::Fulfils;
  return std::nullopt;
}

namespace {

std::string name_of(const Term& t) {
  static const PrefixMap prefixes = [] {
    PrefixMap m = vocab::standard_prefixes();
    m["run"] = std::string(vocab::kRunNs);
    return m;
  }();
  return compact(t, prefixes);
}

}  // namespace

MentalSession::MentalSession(Graph& g, const SchemaRegistry& reg, Minter minter)
    : g_(g), reg_(reg), minter_(std::move(minter)) {}

bool MentalSession::is_a(const Term& node, std::string_view bdi_class) const {
  return reg_.has_type(g_, node, vocab::bdi(bdi_class));
}

std::optional<StateKind> MentalSession::state_kind(const Term& node) const {
  for (auto k : {StateKind::Belief, StateKind::Desire, StateKind::Intention})
    if (reg_.has_type(g_, node, class_iri(k))) return k;
  return std::nullopt;
}

std::optional<ProcessKind> MentalSession::process_kind(const Term& node) const {
  for (auto k : {ProcessKind::Planning, ProcessKind::BeliefProcess, ProcessKind::DesireProcess,
                 ProcessKind::IntentionProcess, ProcessKind::Generic})
    if (reg_.has_type(g_, node, class_iri(k))) return k;
  return std::nullopt;
}

Iri MentalSession::instant(const TimeInstant& t) {
  Iri node = instant_iri(t);
  g_.insert(node, vocab::type(), vocab::bdi("TimeInstant"));
  g_.insert(node, vocab::value(), Literal(t.canonical(), vocab::xsd_date_time()));
  return node;
}

std::optional<Iri> MentalSession::holder_of(const Iri& state) const {
  for (const char* p : {"isBeliefOf", "isDesireOf", "isIntentionOf", "isMentalStateOf"}) {
    for (const auto& o : g_.objects(state, vocab::bdi(p)))
      if (const auto* iri = as_iri(o)) return *iri;
  }
  for (const char* p : {"hasBelief", "hasDesire", "hasIntention", "hasMentalState"}) {
    for (const auto& s : g_.subjects(vocab::bdi(p), state))
      if (const auto* iri = as_iri(s)) return *iri;
  }
  return std::nullopt;
}

ProcessRecord MentalSession::create_process(const Iri& agent, ProcessKind kind, const TimeInstant& at,
                                            const std::optional<Term>& triggered_by,
                                            const std::vector<Iri>& reasons_upon) {
  if (!is_a(agent, "Agent")) throw MentalError(name_of(agent) + " is not an Agent");
  if (triggered_by && !is_a(*triggered_by, "MentalEntity") && !is_a(*triggered_by, "WorldState"))
    throw MentalError("trigger " + name_of(*triggered_by) + " is neither a MentalEntity nor a WorldState");
  for (const auto& r : reasons_upon) {
    const char* required = kind == ProcessKind::Planning ? "Intention" : "MentalState";
    if (!is_a(r, required))
      throw MentalError(std::string(to_string(kind)) + " cannot reason upon " + name_of(r) + ": not a " + required);
  }

  ProcessRecord rec{minter_.mint(std::string(to_string(kind))), agent, kind, reasons_upon, std::nullopt, {}, at};
  g_.insert(rec.id, vocab::type(), class_iri(kind));
  g_.insert(rec.id, vocab::bdi("isProcessedBy"), agent);
  g_.insert(rec.id, vocab::bdi("atTime"), instant(at));
  if (triggered_by) {
    g_.insert(rec.id, vocab::bdi("isTriggeredBy"), *triggered_by);
    if (const auto* iri = as_iri(*triggered_by)) rec.triggered_by = *iri;
  }
  for (const auto& r : reasons_upon) g_.insert(rec.id, vocab::bdi("reasonsUpon"), r);
  return rec;
}

namespace {

void require_process_for(const MentalSession& s, const Iri& via, StateKind kind) {
  const auto pk = s.process_kind(via);
  if (!pk) throw MentalError(name_of(via) + " is not a MentalProcess");
  if (*pk != process_for(kind))
    throw MentalError(std::string(to_string(*pk)) + " " + name_of(via) + " cannot affect a " +
                      std::string(to_string(kind)));
}

}  // namespace

MentalStateRecord MentalSession::assert_state(const Iri& agent, StateKind kind, const Iri& refers_to,
                                              const TimeInstant& from, const Iri& via) {
  if (!is_a(agent, "Agent")) throw MentalError(name_of(agent) + " is not an Agent");
  if (is_a(refers_to, "Goal")) throw MentalError(name_of(refers_to) + " is a Goal, not a WorldState");
  require_process_for(*this, via, kind);

  MentalStateRecord rec{minter_.mint(std::string(to_string(kind))), agent, kind, refers_to, minter_.mint("Interval"),
                        {}};
  g_.insert(rec.id, vocab::type(), class_iri(kind));
  g_.insert(agent, holder_predicate(kind), rec.id);
  g_.insert(agent, vocab::bdi("cognises"), rec.id);
  g_.insert(rec.id, vocab::bdi("refersTo"), refers_to);
  g_.insert(rec.id, vocab::bdi("hasValidity"), rec.validity);
  g_.insert(rec.validity, vocab::type(), vocab::bdi("TimeInterval"));
  g_.insert(rec.validity, vocab::bdi("hasStartTime"), instant(from));
  g_.insert(via, predicate_iri(EffectKind::Generates), rec.id);
  return rec;
}

std::vector<Triple> MentalSession::link_states(const Iri& src, LinkRelation rel, const Iri& dst) {
  struct Shape {
    StateKind from, to;
    const char* inverse;
  };
  const Shape shape = [&]() -> Shape {
    switch (rel) {
      case LinkRelation::Motivates: return {StateKind::Belief, StateKind::Desire, "isMotivatedBy"};
      case LinkRelation::Supports: return {StateKind::Belief, StateKind::Intention, "isSupportedBy"};
      case LinkRelation::Fulfils: return {StateKind::Intention, StateKind::Desire, nullptr};
    }
    return {StateKind::Belief, StateKind::Belief, nullptr};
  }();
  if (state_kind(src) != shape.from || state_kind(dst) != shape.to)
    throw MentalError(std::string(to_string(rel)) + " relates a " + std::string(to_string(shape.from)) + " to a " +
                      std::string(to_string(shape.to)) + "; got " + name_of(src) + " and " + name_of(dst));

  std::vector<Triple> delta{Triple(src, vocab::bdi(to_string(rel)), dst)};
  if (shape.inverse) delta.emplace_back(dst, vocab::bdi(shape.inverse), src);
  for (const auto& t : delta) g_.insert(t);
  return delta;
}

std::vector<Triple> MentalSession::suppress_state(const Iri& state, const Iri& via, const TimeInstant& at) {
  const auto kind = state_kind(state);
  if (!kind) throw MentalError(name_of(state) + " is not a MentalState");
  require_process_for(*this, via, *kind);

  const auto validity = g_.objects(state, vocab::bdi("hasValidity"));
  if (validity.size() != 1) throw MentalError(name_of(state) + " has no single validity interval");
  const Term& interval = validity.front();
  if (g_.subjects(vocab::bdi("hasValidity"), interval).size() > 1)
    throw MentalError("validity interval of " + name_of(state) + " is shared with other entities");
  if (!g_.objects(interval, vocab::bdi("hasEndTime")).empty())
    throw MentalError(name_of(state) + " is already suppressed");
  const auto starts = g_.objects(interval, vocab::bdi("hasStartTime"));
  if (starts.size() != 1) throw MentalError("validity interval of " + name_of(state) + " has no single start");
  const auto start = resolve_instant(starts.front(), g_);
  if (!start) throw MentalError("start of " + name_of(state) + " does not resolve to an instant");
  if (at < *start) throw MentalError(name_of(state) + " is not yet valid at " + at.canonical());

  std::vector<Triple> delta{Triple(interval, vocab::bdi("hasEndTime"), instant(at)),
                            Triple(via, predicate_iri(EffectKind::Suppresses), state)};
  for (const auto& t : delta) g_.insert(t);
  return delta;
}

MentalStateRecord MentalSession::modify_state(const Iri& old, const Iri& via, const TimeInstant& at,
                                              const std::optional<Iri>& refers_to) {
  const auto kind = state_kind(old);
  if (!kind) throw MentalError(name_of(old) + " is not a MentalState");
  const auto agent = holder_of(old);
  if (!agent) throw MentalError(name_of(old) + " has no holding agent");
  std::optional<Iri> target = refers_to;
  if (!target) {
    for (const auto& o : g_.objects(old, vocab::bdi("refersTo")))
      if (const auto* iri = as_iri(o)) {
        target = *iri;
        break;
      }
  }
  if (!target) throw MentalError(name_of(old) + " refers to nothing; give the successor's world state");
  if (!is_a(*agent, "Agent")) throw MentalError(name_of(*agent) + " is not an Agent");
  if (is_a(*target, "Goal")) throw MentalError(name_of(*target) + " is a Goal, not a WorldState");

  suppress_state(old, via, at);
  auto rec = assert_state(*agent, *kind, *target, at, via);
  g_.insert(via, predicate_iri(EffectKind::Modifies), rec.id);
  return rec;
}

JustificationRecord MentalSession::justify(const std::vector<Iri>& entities, const std::string& text) {
  if (entities.empty()) throw MentalError("a justification must justify something");
  for (const auto& e : entities)
    if (!is_a(e, "MentalEntity")) throw MentalError(name_of(e) + " is not a MentalEntity and cannot be justified");

  JustificationRecord rec{minter_.mint("Justification"), entities, Literal::plain(text)};
  g_.insert(rec.id, vocab::type(), vocab::bdi("Justification"));
  g_.insert(rec.id, vocab::label(), rec.text);
  for (const auto& e : entities) g_.insert(rec.id, vocab::bdi("justifies"), e);
  return rec;
}

PlanRecord MentalSession::define_plan(const Iri& via, const Iri& intention, const Iri& goal,
                                      const std::vector<Iri>& tasks) {
  if (process_kind(via) != ProcessKind::Planning) throw MentalError(name_of(via) + " is not a Planning process");
  if (!is_a(intention, "Intention")) throw MentalError(name_of(intention) + " is not an Intention");
  if (!is_a(goal, "Goal")) throw MentalError(name_of(goal) + " is not a Goal");
  for (const auto& t : tasks)
    if (!is_a(t, "Task")) throw MentalError(name_of(t) + " is not a Task");
  for (std::size_t i = 0; i < tasks.size(); ++i)
    for (std::size_t j = i + 1; j < tasks.size(); ++j)
      if (tasks[i] == tasks[j]) throw MentalError("task " + name_of(tasks[i]) + " appears twice in the plan");

  PlanRecord rec{minter_.mint("Plan"), intention, goal, tasks};
  g_.insert(rec.id, vocab::type(), vocab::bdi("Plan"));
  g_.insert(via, vocab::bdi("defines"), rec.id);
  g_.insert(via, vocab::bdi("reasonsUpon"), intention);
  g_.insert(intention, vocab::bdi("specifies"), rec.id);
  g_.insert(rec.id, vocab::bdi("isSpecifiedBy"), intention);
  g_.insert(rec.id, vocab::bdi("addresses"), goal);
  for (const auto& t : tasks) g_.insert(rec.id, vocab::bdi("hasComponent"), t);
  if (!tasks.empty()) {
    g_.insert(rec.id, vocab::bdi("beginsWith"), tasks.front());
    g_.insert(rec.id, vocab::bdi("endsWith"), tasks.back());
  }
  for (std::size_t i = 1; i < tasks.size(); ++i) g_.insert(tasks[i], vocab::bdi("follows"), tasks[i - 1]);
  return rec;
}

void MentalSession::add_part(const Iri& whole, const Iri& part) {
  const auto kw = state_kind(whole);
  const auto kp = state_kind(part);
  if (!kw || !kp) throw MentalError("hasPart between mental states needs two MentalStates");
  if (*kw != *kp)
    throw MentalError("a " + std::string(to_string(*kw)) + " cannot have a " + std::string(to_string(*kp)) +
                      " as part");
  if (whole == part) throw MentalError(name_of(whole) + " cannot be part of itself");
  g_.insert(whole, vocab::bdi("hasPart"), part);
}

bool MentalSession::emit(const Triple& t) {
  const Iri holder = vocab::bdi("hasMentalState");
  const Iri held = vocab::bdi("isMentalStateOf");
  auto supers = reg_.superproperty_closure(t.predicate);
  supers.push_back(t.predicate);
  const bool holds = std::find(supers.begin(), supers.end(), holder) != supers.end();
  const bool held_by = std::find(supers.begin(), supers.end(), held) != supers.end();
  if ((holds && is_a(t.object, "Goal")) || (held_by && is_a(t.subject, "Goal")))
    throw MentalError("goals are not mental states: " + to_ntriples(t));
  return g_.insert(t);
}

}  // namespace bdi
