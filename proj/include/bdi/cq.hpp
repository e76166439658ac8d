#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bdi/pattern.hpp"
#include "bdi/rdf.hpp"
#include "bdi/temporal.hpp"

namespace bdi {

class CqError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CqParam {
  enum class Type { Node, Instant };
  std::string name;
  Type type = Type::Node;
  bool required = true;
  std::string doc;
};

struct CqTemplate {
  std::string id;        // CQ1 .. CQ18
  std::string question;  // verbatim competency question
  std::vector<CqParam> params;
  std::vector<std::string> columns;
  /// Graph patterns over `?param` and result variables; empty for the
  /// templates answered procedurally (CQ15 to CQ18). Each inner list is one
  /// alternative of a union.
  std::vector<std::vector<Pattern>> branches;
};

const std::vector<CqTemplate>& list_templates();
const CqTemplate& find_template(const std::string& id);

struct ResultSet {
  std::vector<std::string> columns;
  std::vector<std::vector<std::optional<Term>>> rows;  // sorted, distinct
};

using CqParams = std::map<std::string, Term>;

/// Converts CLI text to a parameter value: an instant becomes an
/// xsd:dateTime literal, a node is expanded against `prefixes`.
Term parse_param(const CqParam& p, const std::string& text, const PrefixMap& prefixes);

ResultSet answer(const std::string& id, const CqParams& params, const Graph& g, const TimeMap* timemap = nullptr);

std::string format_table(const ResultSet& rs, const PrefixMap& prefixes);
std::string format_csv(const ResultSet& rs, const PrefixMap& prefixes);

}  // namespace bdi
