#include <algorithm>
#include <stdexcept>

#include "bdi/schema.hpp"
#include "bdi/vocab.hpp"

#ifdef BDI_HAVE_OPENMP
#include <omp.h>
#endif

namespace bdi {

const char* to_string(InferenceRule r) {
  switch (r) {
    case InferenceRule::SubClass: return "subclass";
    case InferenceRule::Equivalence: return "equivalence";
    case InferenceRule::SubProperty: return "subproperty";
    case InferenceRule::Inverse: return "inverse";
    case InferenceRule::Transitive: return "transitive";
    case InferenceRule::Domain: return "domain";
    case InferenceRule::Range: return "range";
  }
  return "?";
}

namespace {

// All one-step consequences that use `t` as a premise, joined against `g`.
void derive_from(const Triple& t, const Graph& g, const SchemaRegistry& reg, std::vector<DerivationStep>& out) {
  if (t.predicate == vocab::type()) {
    const auto* cls = as_iri(t.object);
    if (!cls) return;
    if (auto eq = reg.registered_equivalent(*cls))
      out.push_back({InferenceRule::Equivalence, Triple(t.subject, vocab::type(), *eq), {t}, *eq});
    if (const auto* c = reg.find_class(*cls)) {
      for (const auto& sup : c->superclasses) {
        if (reg.is_external(sup)) continue;
        out.push_back({InferenceRule::SubClass, Triple(t.subject, vocab::type(), sup), {t}, *cls});
      }
    }
    return;
  }

  const auto* prop = reg.find_property(t.predicate);
  if (!prop) return;
  for (const auto& sup : prop->superproperties)
    out.push_back({InferenceRule::SubProperty, Triple(t.subject, sup, t.object), {t}, prop->iri});
  const bool object_is_node = !is_literal(t.object);
  if (prop->inverse && object_is_node)
    out.push_back({InferenceRule::Inverse, Triple(t.object, *prop->inverse, t.subject), {t}, prop->iri});
  if (prop->transitive) {
    // t = (a p b): (b p c) gives (a p c); (z p a) gives (z p b).
    if (object_is_node) {
      for (const auto& next : g.match(t.object, t.predicate, std::nullopt))
        out.push_back({InferenceRule::Transitive, Triple(t.subject, t.predicate, next.object), {t, next}, prop->iri});
    }
    for (const auto& prev : g.match(std::nullopt, t.predicate, t.subject))
      out.push_back({InferenceRule::Transitive, Triple(prev.subject, t.predicate, t.object), {prev, t}, prop->iri});
  }
  if (prop->domain)
    out.push_back({InferenceRule::Domain, Triple(t.subject, vocab::type(), *prop->domain), {t}, prop->iri});
  if (prop->range && object_is_node)
    out.push_back({InferenceRule::Range, Triple(t.object, vocab::type(), *prop->range), {t}, prop->iri});
}

std::vector<std::vector<DerivationStep>> derive_round(const std::vector<Triple>& delta, const Graph& g,
                                                      const SchemaRegistry& reg, Execution exec) {
  std::vector<std::vector<DerivationStep>> per_triple(delta.size());
  const auto n = static_cast<long>(delta.size());
#ifdef BDI_HAVE_OPENMP
  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic, 64)
    for (long i = 0; i < n; ++i) derive_from(delta[i], g, reg, per_triple[i]);
    return per_triple;
  }
#else
  (void)exec;
#endif
  for (long i = 0; i < n; ++i) derive_from(delta[i], g, reg, per_triple[i]);
  return per_triple;
}

}  // namespace

std::vector<Triple> close_incremental(Graph& g, const std::vector<Triple>& added, const SchemaRegistry& reg,
                                      DerivationLog* log, Execution exec) {
  std::vector<Triple> inferred;
  std::vector<Triple> delta = added;
  while (!delta.empty()) {
    // Per-triple buckets are merged in delta order, so the serial and
    // parallel paths insert (and log) identically.
    auto buckets = derive_round(delta, g, reg, exec);
    std::vector<Triple> next;
    for (auto& bucket : buckets) {
      for (auto& step : bucket) {
        if (!g.insert(step.conclusion)) continue;
        next.push_back(step.conclusion);
        inferred.push_back(step.conclusion);
        if (log) log->push_back(std::move(step));
      }
    }
    delta = std::move(next);
  }
  return inferred;
}

Graph materialize(const Graph& g, const SchemaRegistry& reg, DerivationLog* log, Execution exec) {
  Graph out = g;
  std::vector<Triple> seed(g.begin(), g.end());
  close_incremental(out, seed, reg, log, exec);
  return out;
}

Graph replay(const Graph& input, const DerivationLog& log, const SchemaRegistry& reg) {
  Graph g = input;
  for (const auto& step : log) {
    for (const auto& p : step.premises) {
      if (!g.contains(p)) throw std::logic_error("replay: missing premise " + to_ntriples(p));
    }
    // The step must be one the schema licenses from its own premises.
    Graph premises;
    for (const auto& p : step.premises) premises.insert(p);
    std::vector<DerivationStep> candidates;
    derive_from(step.premises.front(), premises, reg, candidates);
    const bool licensed = std::any_of(candidates.begin(), candidates.end(), [&](const DerivationStep& c) {
      return c.rule == step.rule && c.conclusion == step.conclusion;
    });
    if (!licensed) throw std::logic_error("replay: unlicensed step " + to_ntriples(step.conclusion));
    g.insert(step.conclusion);
  }
  return g;
}

}  // namespace bdi
