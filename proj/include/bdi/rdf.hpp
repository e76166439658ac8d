#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <variant>
#include <vector>

namespace bdi {

/// Absolute IRI. Construction validates: non-empty, no whitespace, has a scheme.
class Iri {
 public:
  Iri() = default;
  explicit Iri(std::string value);

  const std::string& str() const { return value_; }
  bool empty() const { return value_.empty(); }

  /// Part after the last '#', '/' or ':'.
  std::string_view local_name() const;

  static bool is_valid(std::string_view s);

  auto operator<=>(const Iri&) const = default;

 private:
  std::string value_;
};

struct BlankNode {
  std::string id;
  auto operator<=>(const BlankNode&) const = default;
};

/// A literal with an explicit datatype. `language` is non-empty only for
/// rdf:langString literals.
class Literal {
 public:
  Literal() = default;
  Literal(std::string lexical, Iri datatype);
  static Literal plain(std::string lexical);
  static Literal lang(std::string lexical, std::string language);

  const std::string& lexical() const { return lexical_; }
  const Iri& datatype() const { return datatype_; }
  const std::string& language() const { return language_; }

  auto operator<=>(const Literal&) const = default;

 private:
  std::string lexical_;
  Iri datatype_;
  std::string language_;
};

using Term = std::variant<Iri, BlankNode, Literal>;

inline bool is_iri(const Term& t) { return std::holds_alternative<Iri>(t); }
inline bool is_blank(const Term& t) { return std::holds_alternative<BlankNode>(t); }
inline bool is_literal(const Term& t) { return std::holds_alternative<Literal>(t); }
const Iri* as_iri(const Term& t);
const Literal* as_literal(const Term& t);

/// N-Triples-style rendering; used for canonical keys and diagnostics.
std::string to_ntriples(const Term& t);

struct Triple {
  Term subject;
  Iri predicate;
  Term object;

  Triple() = default;
  Triple(Term s, Iri p, Term o);

  auto operator<=>(const Triple&) const = default;
};

std::string to_ntriples(const Triple& t);

/// Match pattern: an unset position is a wildcard.
struct TriplePattern {
  std::optional<Term> subject;
  std::optional<Iri> predicate;
  std::optional<Term> object;
};

using PrefixMap = std::map<std::string, std::string>;

/// Set of triples with SPO, POS and OSP indexes kept in lockstep.
class Graph {
 public:
  Graph() = default;

  /// Returns true when the triple was not already present.
  bool insert(const Triple& t);
  bool insert(Term s, Iri p, Term o) { return insert(Triple(std::move(s), std::move(p), std::move(o))); }
  bool erase(const Triple& t);
  void insert_all(const Graph& other);

  bool contains(const Triple& t) const { return spo_.count(t) != 0; }
  std::size_t size() const { return spo_.size(); }
  bool empty() const { return spo_.empty(); }

  /// Triples matching every bound position, in SPO order.
  std::vector<Triple> match(const TriplePattern& p) const;
  std::vector<Triple> match(const std::optional<Term>& s, const std::optional<Iri>& p,
                            const std::optional<Term>& o) const {
    return match(TriplePattern{s, p, o});
  }

  /// Objects of (s, p, ·) / subjects of (·, p, o), sorted.
  std::vector<Term> objects(const Term& s, const Iri& p) const;
  std::vector<Term> subjects(const Iri& p, const Term& o) const;
  bool has(const Term& s, const Iri& p, const Term& o) const { return !is_literal(s) && contains(Triple(s, p, o)); }

  const std::set<Triple>& triples() const { return spo_; }
  auto begin() const { return spo_.begin(); }
  auto end() const { return spo_.end(); }

  PrefixMap& prefixes() { return prefixes_; }
  const PrefixMap& prefixes() const { return prefixes_; }

  /// Index coherence check used by tests.
  bool indexes_consistent() const;

  /// Triple-set equality (prefixes ignored).
  bool same_triples(const Graph& other) const { return spo_ == other.spo_; }

 private:
  using Key = std::tuple<Term, Term, Term>;
  std::set<Triple> spo_;
  std::set<Key> pos_;  // (p, o, s)
  std::set<Key> osp_;  // (o, s, p)
  PrefixMap prefixes_;
};

/// Expand "pfx:local" or "<iri>" against a prefix map.
std::optional<Iri> expand_name(std::string_view text, const PrefixMap& prefixes);

/// Compact an IRI to "pfx:local" when a prefix covers it and the local part is
/// a safe name; otherwise "<iri>".
std::string compact(const Iri& iri, const PrefixMap& prefixes);
std::string compact(const Term& t, const PrefixMap& prefixes);

}  // namespace bdi
