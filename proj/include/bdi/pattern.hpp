#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bdi/rdf.hpp"

namespace bdi {

struct Variable {
  std::string name;  // without the leading '?'
  auto operator<=>(const Variable&) const = default;
};

using PatternTerm = std::variant<Term, Variable>;

struct Pattern {
  PatternTerm subject;
  PatternTerm predicate;
  PatternTerm object;
  bool negated = false;
};

using Bindings = std::map<std::string, Term>;

inline bool is_variable(const PatternTerm& t) { return std::holds_alternative<Variable>(t); }
const Variable* as_variable(const PatternTerm& t);

/// The term a position denotes under `b`, or nullopt for an unbound variable.
std::optional<Term> resolve(const PatternTerm& t, const Bindings& b);

/// Variables of a pattern, in s/p/o order without repeats.
std::vector<std::string> variables(const Pattern& p);

/// Extends `b` so that `p` matches `t`; false (with `b` untouched) on clash.
bool unify(const Pattern& p, const Triple& t, Bindings& b);

/// Triples of `g` that `p` can match under `b`, answered from the indexes.
std::vector<Triple> candidates(const Pattern& p, const Graph& g, const Bindings& b);

/// Every extension of `seed` satisfying all positive patterns, in join order.
std::vector<Bindings> solve(const std::vector<Pattern>& patterns, const Graph& g, const Bindings& seed = {});

bool has_match(const Pattern& p, const Graph& g, const Bindings& b);

/// `?a=<...>;?b="..."` in variable order; the refractoriness key of a firing.
std::string canonical_key(const Bindings& b);

std::string to_string(const PatternTerm& t, const PrefixMap& prefixes);

}  // namespace bdi
