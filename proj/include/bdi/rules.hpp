#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bdi/mental_graph.hpp"
#include "bdi/pattern.hpp"

namespace bdi {

class RuleError : public std::runtime_error {
 public:
  RuleError(const std::string& what, std::size_t line, std::size_t column);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// A conditional: a triple pattern (possibly under `not`) or the temporal
/// builtin `valid_at(ENTITY, INSTANT)` where INSTANT may be `NOW`.
struct Condition {
  enum class Kind { Triple, ValidAt };
  Kind kind = Kind::Triple;
  Pattern pattern;  // Kind::Triple
  PatternTerm entity;  // Kind::ValidAt
  std::optional<PatternTerm> instant;  // Kind::ValidAt; nullopt means NOW
  bool negated = false;
};

enum class ActionKind { AssertState, Modify, Suppress, Link, Justify, Emit, DefinePlan };

std::string_view to_string(ActionKind k);

/// One tail action. Argument shapes:
///   assert_belief|assert_desire|assert_intention(SOURCE_STATE) or (AGENT, WORLD_STATE)
///   modify(STATE [, WORLD_STATE])      suppress(STATE)
///   link(motivates|supports|fulfils, SRC, DST)
///   justify(TARGET, ..., "text with ?vars")
///   emit(S, P, O)
///   define_plan(INTENTION, GOAL, TASK, ...)
struct Action {
  ActionKind kind;
  StateKind state_kind = StateKind::Belief;  // AssertState
  LinkRelation relation = LinkRelation::Motivates;  // Link
  std::vector<PatternTerm> args;
  std::string text;  // Justify
  std::optional<std::string> bind_as;
  std::size_t line = 0;
};

struct Rule {
  std::string id;
  int priority = 0;
  Pattern head;
  std::vector<Condition> conditions;
  std::vector<Action> tail;
  std::size_t line = 0;

  /// Variables bound by the head and positive triple conditionals.
  std::vector<std::string> bound_variables() const;
};

struct RuleSet {
  std::vector<Rule> rules;
  PrefixMap prefixes;  // caller prefixes plus those declared in the file
};

/// Stanzas of the form
///   [@id name] [@priority n] HEAD / COND & not(COND) >> ACTION ; ACTION .
/// `@prefix p: <iri> .` lines extend `prefixes`. Rules without @id are
/// numbered r1, r2, ... by position.
RuleSet parse_rules(std::string_view text, const PrefixMap& prefixes = {});

RuleSet read_rules_file(const std::string& path, const PrefixMap& prefixes = {});

}  // namespace bdi
