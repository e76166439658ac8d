#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "bdi/rdf.hpp"

namespace bdi {

/// Fatal Turtle syntax error; no partial graph is produced.
class TurtleError : public std::runtime_error {
 public:
  TurtleError(const std::string& what, std::size_t line, std::size_t column);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Parses the Turtle subset: @prefix/PREFIX, `a`, `;` and `,` lists,
/// IRIs, prefixed names, blank node labels, string literals (short and
/// long forms) with language tags or datatypes, and bare numbers/booleans.
Graph parse_turtle(std::string_view text);

/// Deterministic serialization: the standard prefix block merged with the
/// graph's prefixes (sorted), subjects sorted, predicates grouped (rdf:type
/// first, written `a`), objects sorted.
std::string serialize_turtle(const Graph& graph);

Graph read_turtle_file(const std::string& path);

}  // namespace bdi
