#pragma once

#include <string>
#include <string_view>

#include "bdi/rdf.hpp"

// Namespaces and the IRIs the engine refers to directly.
namespace bdi::vocab {

inline constexpr std::string_view kBdiNs = "https://w3id.org/fossr/ontology/bdi/";
inline constexpr std::string_view kRdfNs = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view kRdfsNs = "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr std::string_view kXsdNs = "http://www.w3.org/2001/XMLSchema#";
inline constexpr std::string_view kOwlNs = "http://www.w3.org/2002/07/owl#";
inline constexpr std::string_view kDulNs = "http://www.ontologydesignpatterns.org/ont/dul/DUL.owl#";
inline constexpr std::string_view kD0Ns = "http://www.ontologydesignpatterns.org/ont/d0.owl#";
/// Namespace for individuals minted during a run.
inline constexpr std::string_view kRunNs = "urn:bdi-run:";

inline Iri bdi(std::string_view local) { return Iri(std::string(kBdiNs) + std::string(local)); }
inline Iri rdf(std::string_view local) { return Iri(std::string(kRdfNs) + std::string(local)); }
inline Iri rdfs(std::string_view local) { return Iri(std::string(kRdfsNs) + std::string(local)); }
inline Iri xsd(std::string_view local) { return Iri(std::string(kXsdNs) + std::string(local)); }
inline Iri owl(std::string_view local) { return Iri(std::string(kOwlNs) + std::string(local)); }
inline Iri dul(std::string_view local) { return Iri(std::string(kDulNs) + std::string(local)); }
inline Iri d0(std::string_view local) { return Iri(std::string(kD0Ns) + std::string(local)); }
inline Iri run(std::string_view local) { return Iri(std::string(kRunNs) + std::string(local)); }

inline bool in_namespace(const Iri& iri, std::string_view ns) { return iri.str().starts_with(ns); }

inline const Iri& type() {
  static const Iri t = rdf("type");
  return t;
}
inline const Iri& value() {
  static const Iri v = rdf("value");
  return v;
}
inline const Iri& lang_string() {
  static const Iri v = rdf("langString");
  return v;
}
inline const Iri& xsd_string() {
  static const Iri v = xsd("string");
  return v;
}
inline const Iri& xsd_date_time() {
  static const Iri v = xsd("dateTime");
  return v;
}
inline const Iri& label() {
  static const Iri v = rdfs("label");
  return v;
}
inline const Iri& comment() {
  static const Iri v = rdfs("comment");
  return v;
}

/// Provenance predicates attached to run-minted processes.
inline const Iri& fired_rule() {
  static const Iri v = run("firedRule");
  return v;
}
inline const Iri& binding_key() {
  static const Iri v = run("bindingKey");
  return v;
}

/// rdf, rdfs, xsd, owl and bdi. Always emitted by the serializer.
const PrefixMap& standard_prefixes();

}  // namespace bdi::vocab
