#include "bdi/pattern.hpp"

#include <algorithm>
#include <functional>

namespace bdi {

const Variable* as_variable(const PatternTerm& t) { return std::get_if<Variable>(&t); }

std::optional<Term> resolve(const PatternTerm& t, const Bindings& b) {
  if (const auto* v = as_variable(t)) {
    auto it = b.find(v->name);
    if (it == b.end()) return std::nullopt;
    return it->second;
  }
  return std::get<Term>(t);
}

std::vector<std::string> variables(const Pattern& p) {
  std::vector<std::string> out;
  for (const auto* pos : {&p.subject, &p.predicate, &p.object}) {
    if (const auto* v = as_variable(*pos)) {
      if (std::find(out.begin(), out.end(), v->name) == out.end()) out.push_back(v->name);
    }
  }
  return out;
}

namespace {

bool bind_position(const PatternTerm& pos, const Term& value, Bindings& b, std::vector<std::string>& added) {
  if (const auto* v = as_variable(pos)) {
    auto [it, inserted] = b.emplace(v->name, value);
    if (inserted) {
      added.push_back(v->name);
      return true;
    }
    return it->second == value;
  }
  return std::get<Term>(pos) == value;
}

}  // namespace

bool unify(const Pattern& p, const Triple& t, Bindings& b) {
  std::vector<std::string> added;
  const bool ok = bind_position(p.subject, t.subject, b, added) && bind_position(p.predicate, Term(t.predicate), b, added) &&
                  bind_position(p.object, t.object, b, added);
  if (!ok)
    for (const auto& name : added) b.erase(name);
  return ok;
}

std::vector<Triple> candidates(const Pattern& p, const Graph& g, const Bindings& b) {
  const auto s = resolve(p.subject, b);
  const auto pr = resolve(p.predicate, b);
  const auto o = resolve(p.object, b);
  std::optional<Iri> pred;
  if (pr) {
    const auto* iri = as_iri(*pr);
    if (!iri) return {};
    pred = *iri;
  }
  if (s && is_literal(*s)) return {};
  return g.match(s, pred, o);
}

std::vector<Bindings> solve(const std::vector<Pattern>& patterns, const Graph& g, const Bindings& seed) {
  std::vector<Bindings> out;
  Bindings current = seed;
  std::function<void(std::size_t)> step = [&](std::size_t i) {
    if (i == patterns.size()) {
      out.push_back(current);
      return;
    }
    for (const auto& t : candidates(patterns[i], g, current)) {
      Bindings saved = current;
      if (unify(patterns[i], t, current)) step(i + 1);
      current = std::move(saved);
    }
  };
  step(0);
  return out;
}

bool has_match(const Pattern& p, const Graph& g, const Bindings& b) {
  for (const auto& t : candidates(p, g, b)) {
    Bindings copy = b;
    if (unify(p, t, copy)) return true;
  }
  return false;
}

std::string canonical_key(const Bindings& b) {
  std::string out;
  for (const auto& [name, value] : b) {
    if (!out.empty()) out += ';';
    out += '?' + name + '=' + to_ntriples(value);
  }
  return out;
}

std::string to_string(const PatternTerm& t, const PrefixMap& prefixes) {
  if (const auto* v = as_variable(t)) return "?" + v->name;
  return compact(std::get<Term>(t), prefixes);
}

}  // namespace bdi
