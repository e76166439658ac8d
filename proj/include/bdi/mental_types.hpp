#pragma once

#include <optional>
#include <string_view>

#include "bdi/rdf.hpp"

namespace bdi {

enum class StateKind { Belief, Desire, Intention };
enum class ProcessKind { Generic, BeliefProcess, DesireProcess, IntentionProcess, Planning };
enum class EffectKind { Generates, Modifies, Suppresses };

std::string_view to_string(StateKind k);
std::string_view to_string(ProcessKind k);
std::string_view to_string(EffectKind k);

Iri class_iri(StateKind k);
Iri class_iri(ProcessKind k);
Iri predicate_iri(EffectKind k);
/// bdi:hasBelief / hasDesire / hasIntention.
Iri holder_predicate(StateKind k);

/// The process kind allowed to affect states of kind `k`.
ProcessKind process_for(StateKind k);

std::optional<StateKind> state_kind_from_class(const Iri& cls);
std::optional<ProcessKind> process_kind_from_class(const Iri& cls);

}  // namespace bdi
