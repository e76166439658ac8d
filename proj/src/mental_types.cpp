#include "bdi/mental_types.hpp"

#include "bdi/vocab.hpp"

namespace bdi {

std::string_view to_string(StateKind k) {
  switch (k) {
    case StateKind::Belief: return "Belief";
    case StateKind::Desire: return "Desire";
    case StateKind::Intention: return "Intention";
  }
  return "?";
}

std::string_view to_string(ProcessKind k) {
  switch (k) {
    case ProcessKind::Generic: return "MentalProcess";
    case ProcessKind::BeliefProcess: return "BeliefProcess";
    case ProcessKind::DesireProcess: return "DesireProcess";
    case ProcessKind::IntentionProcess: return "IntentionProcess";
    case ProcessKind::Planning: return "Planning";
  }
  return "?";
}

std::string_view to_string(EffectKind k) {
  switch (k) {
    case EffectKind::Generates: return "generates";
    case EffectKind::Modifies: return "modifies";
    case EffectKind::Suppresses: return "suppresses";
  }
  return "?";
}

Iri class_iri(StateKind k) { return vocab::bdi(to_string(k)); }
Iri class_iri(ProcessKind k) { return vocab::bdi(to_string(k)); }
Iri predicate_iri(EffectKind k) { return vocab::bdi(to_string(k)); }

Iri holder_predicate(StateKind k) {
  switch (k) {
    case StateKind::Belief: return vocab::bdi("hasBelief");
    case StateKind::Desire: return vocab::bdi("hasDesire");
    case StateKind::Intention: return vocab::bdi("hasIntention");
  }
  return vocab::bdi("hasMentalState");
}

ProcessKind process_for(StateKind k) {
  switch (k) {
    case StateKind::Belief: return ProcessKind::BeliefProcess;
    case StateKind::Desire: return ProcessKind::DesireProcess;
    case StateKind::Intention: return ProcessKind::IntentionProcess;
  }
  return ProcessKind::Generic;
}

std::optional<StateKind> state_kind_from_class(const Iri& cls) {
  for (auto k : {StateKind::Belief, StateKind::Desire, StateKind::Intention})
    if (class_iri(k) == cls) return k;
  return std::nullopt;
}

std::optional<ProcessKind> process_kind_from_class(const Iri& cls) {
  for (auto k : {ProcessKind::Generic, ProcessKind::BeliefProcess, ProcessKind::DesireProcess,
                 ProcessKind::IntentionProcess, ProcessKind::Planning})
    if (class_iri(k) == cls) return k;
  return std::nullopt;
}

}  // namespace bdi
