#include <algorithm>
#include <sstream>

#include "bdi/schema.hpp"
#include "bdi/vocab.hpp"

namespace bdi {

std::size_t ValidationReport::error_count() const {
  return static_cast<std::size_t>(
      std::count_if(items.begin(), items.end(), [](const auto& i) { return i.severity == Severity::Error; }));
}

std::size_t ValidationReport::warning_count() const { return items.size() - error_count(); }

std::vector<ValidationItem> ValidationReport::with_code(const std::string& code) const {
  std::vector<ValidationItem> out;
  std::copy_if(items.begin(), items.end(), std::back_inserter(out), [&](const auto& i) { return i.code == code; });
  return out;
}

namespace {

std::string short_name(const Iri& iri) {
  static const PrefixMap prefixes = [] {
    PrefixMap m = vocab::standard_prefixes();
    m["dul"] = std::string(vocab::kDulNs);
    m["d0"] = std::string(vocab::kD0Ns);
    m["run"] = std::string(vocab::kRunNs);
    return m;
  }();
  return compact(iri, prefixes);
}

std::string short_name(const Term& t) {
  if (const auto* i = as_iri(t)) return short_name(*i);
  return to_ntriples(t);
}

bool has_any(const std::set<Iri>& types, const std::vector<Iri>& fillers) {
  return std::any_of(fillers.begin(), fillers.end(), [&](const Iri& f) { return types.count(f) != 0; });
}

std::string join_names(const std::vector<Iri>& iris, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < iris.size(); ++i) {
    if (i) out += sep;
    out += short_name(iris[i]);
  }
  return out;
}

}  // namespace

ValidationReport validate(const Graph& g, const SchemaRegistry& reg) {
  ValidationReport report;
  auto add = [&](Severity sev, const char* code, const Term& subject, std::string msg) {
    report.items.push_back(ValidationItem{sev, code, subject, std::move(msg)});
  };

  // Typed individuals and their (closed) types.
  std::map<Term, std::set<Iri>> typed;
  for (const auto& t : g.match(std::nullopt, vocab::type(), std::nullopt)) {
    if (!typed.count(t.subject)) typed[t.subject] = reg.types_of(g, t.subject);
  }
  auto types_of = [&](const Term& node) -> const std::set<Iri>& {
    static const std::set<Iri> none;
    auto it = typed.find(node);
    return it == typed.end() ? none : it->second;
  };

  // Disjointness: one item per unordered disjoint pair.
  for (const auto& [node, types] : typed) {
    for (const auto& cls : types) {
      const auto* c = reg.find_class(cls);
      if (!c) continue;
      for (const auto& other : c->disjoint_with) {
        if (cls < other && types.count(other)) {
          add(Severity::Error, codes::kDisjoint, node,
              "typed both " + short_name(cls) + " and " + short_name(other) + ", which are disjoint");
        }
      }
    }
  }

  // Cardinality bounds.
  for (const auto& [cls_iri, cls] : reg.classes()) {
    if (cls.cardinalities.empty()) continue;
    for (const auto& [node, types] : typed) {
      if (!types.count(cls_iri)) continue;
      for (const auto& [prop, bound] : cls.cardinalities) {
        const std::size_t n = g.match(node, prop, std::nullopt).size();
        const bool under = bound.min && n < *bound.min;
        const bool over = bound.max && n > *bound.max;
        if (!under && !over) continue;
        std::ostringstream msg;
        msg << short_name(cls_iri) << " has " << n << " " << short_name(prop) << " value(s); expected ";
        if (bound.min && bound.max && *bound.min == *bound.max)
          msg << "exactly " << *bound.min;
        else if (bound.max)
          msg << "at most " << *bound.max;
        else
          msg << "at least " << *bound.min;
        add(Severity::Error, codes::kCardinality, node, msg.str());
      }
    }
  }

  // Restrictions under the closed-world reading.
  for (const auto& r : reg.restrictions()) {
    for (const auto& [node, types] : typed) {
      if (!types.count(r.on_class)) continue;
      const auto edges = g.match(node, r.property, std::nullopt);
      if (r.kind == Restriction::Kind::Universal) {
        for (const auto& e : edges) {
          if (has_any(types_of(e.object), r.fillers)) continue;
          add(Severity::Error, codes::kUniversal, node,
              short_name(r.on_class) + " " + short_name(r.property) + " " + short_name(e.object) +
                  ": value is not a " + join_names(r.fillers, " or "));
        }
      } else {
        const bool satisfied = std::any_of(edges.begin(), edges.end(),
                                           [&](const Triple& e) { return has_any(types_of(e.object), r.fillers); });
        if (!satisfied)
          add(Severity::Warning, codes::kExistential, node,
              short_name(r.on_class) + " has no " + short_name(r.property) + " to a " + join_names(r.fillers, " or "));
      }
    }
  }

  // Vocabulary outside the registry.
  std::set<std::pair<Term, Iri>> unknown_preds;
  for (const auto& t : g) {
    if (vocab::in_namespace(t.predicate, vocab::kBdiNs) && !reg.find_property(t.predicate))
      unknown_preds.emplace(t.subject, t.predicate);
    if (t.predicate == vocab::type()) {
      const auto* cls = as_iri(t.object);
      if (cls && vocab::in_namespace(*cls, vocab::kBdiNs) && !reg.find_class(*cls))
        add(Severity::Warning, codes::kUnknownClass, t.subject, "class " + short_name(*cls) + " is not in the schema");
    }
  }
  for (const auto& [subject, pred] : unknown_preds)
    add(Severity::Warning, codes::kUnknownPredicate, subject, "predicate " + short_name(pred) + " is not in the schema");

  std::sort(report.items.begin(), report.items.end(), [](const ValidationItem& a, const ValidationItem& b) {
    return std::tie(a.subject, a.code, a.message) < std::tie(b.subject, b.code, b.message);
  });
  return report;
}

std::string format_report(const ValidationReport& report, const PrefixMap& prefixes, bool color) {
  std::ostringstream out;
  for (const auto& item : report.items) {
    const bool err = item.severity == Severity::Error;
    const char* tag = err ? "error" : "warning";
    if (color) out << (err ? "\x1b[31m" : "\x1b[33m");
    out << tag;
    if (color) out << "\x1b[0m";
    out << " " << item.code << " " << compact(item.subject, prefixes) << ": " << item.message << "\n";
  }
  out << report.error_count() << " error(s), " << report.warning_count() << " warning(s)\n";
  return out.str();
}

}  // namespace bdi
