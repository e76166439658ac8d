#include "json.hpp"
#include <set>
#include <sstream>

#include "bdi/mental_graph.hpp"
#include "bdi/vocab.hpp"

namespace bdi {

namespace {

struct Edge {
  const char* relation;
  Iri predicate;
  bool forward;  // follow (node, p, ·) when true, (·, p, node) otherwise
};

const std::vector<Edge>& edges() {
  static const std::vector<Edge> e = {
      {"isMotivatedBy", vocab::bdi("isMotivatedBy"), true},
      {"isMotivatedBy", vocab::bdi("motivates"), false},
      {"isSupportedBy", vocab::bdi("isSupportedBy"), true},
      {"isSupportedBy", vocab::bdi("supports"), false},
      {"fulfils", vocab::bdi("fulfils"), true},
      {"fulfils", vocab::bdi("fulfills"), true},
      {"isGeneratedBy", vocab::bdi("generates"), false},
      {"isGeneratedBy", vocab::bdi("modifies"), false},
      {"isTriggeredBy", vocab::bdi("isTriggeredBy"), true},
      {"isTriggeredBy", vocab::bdi("triggers"), false},
      {"isJustifiedBy", vocab::bdi("justifies"), false},
      {"isJustifiedBy", vocab::bdi("isJustifiedBy"), true},
      {"refersTo", vocab::bdi("refersTo"), true},
  };
  return e;
}

std::optional<Iri> most_specific_class(const Term& node, const Graph& g, const SchemaRegistry& reg) {
  std::optional<Iri> best;
  std::size_t best_depth = 0;
  for (const auto& t : g.objects(node, vocab::type())) {
    const auto* cls = as_iri(t);
    if (!cls) continue;
    const std::size_t d = reg.find_class(*cls) ? reg.depth(*cls) + 1 : 0;
    if (!best || d > best_depth) {
      best = *cls;
      best_depth = d;
    }
  }
  return best;
}

class Walker {
 public:
  Walker(const Graph& g, const SchemaRegistry& reg, std::size_t cap) : g_(g), reg_(reg), cap_(cap) {}

  Explanation run(const Term& root) {
    Explanation out;
    out.root = make(root, "");
    expand(out.root);
    out.truncated = truncated_;
    out.node_count = count_;
    return out;
  }

 private:
  ExplainNode make(const Term& t, std::string relation) {
    ExplainNode n;
    n.term = t;
    n.relation = std::move(relation);
    n.cls = most_specific_class(t, g_, reg_);
    const auto labels = g_.objects(t, vocab::label());
    if (!labels.empty())
      if (const auto* lit = as_literal(labels.front())) n.label = lit->lexical();
    ++count_;
    return n;
  }

  void expand(ExplainNode& node) {
    expanded_.insert(node.term);
    path_.insert(node.term);
    std::set<std::pair<std::string, Term>> seen;
    for (const auto& e : edges()) {
      const auto targets = e.forward ? g_.objects(node.term, e.predicate) : g_.subjects(e.predicate, node.term);
      for (const auto& t : targets) {
        if (!seen.emplace(e.relation, t).second) continue;
        if (count_ >= cap_) {
          truncated_ = true;
          path_.erase(node.term);
          return;
        }
        ExplainNode child = make(t, e.relation);
        if (path_.count(t)) {
          child.cycle = true;
        } else if (expanded_.count(t)) {
          child.shared = true;
        } else {
          expand(child);
        }
        node.children.push_back(std::move(child));
      }
    }
    path_.erase(node.term);
  }

  const Graph& g_;
  const SchemaRegistry& reg_;
  std::size_t cap_;
  std::size_t count_ = 0;
  bool truncated_ = false;
  std::set<Term> path_;
  std::set<Term> expanded_;
};

}  // namespace

Explanation explain(const Term& entity, const Graph& g, const SchemaRegistry& reg, std::size_t max_nodes) {
  const bool known = !g.match(entity, std::nullopt, std::nullopt).empty() ||
                     !g.match(std::nullopt, std::nullopt, entity).empty();
  if (!known) throw MentalError("unknown entity " + to_ntriples(entity));
  return Walker(g, reg, std::max<std::size_t>(max_nodes, 1)).run(entity);
}

namespace {

template <typename Fn>
void visit(const ExplainNode& n, int& next_id, int parent, Fn&& fn) {
  const int id = next_id++;
  fn(n, id, parent);
  for (const auto& c : n.children) visit(c, next_id, id, fn);
}

}  // namespace

std::string explanation_json(const Explanation& e, const PrefixMap& prefixes) {
  nlohmann::ordered_json nodes = nlohmann::ordered_json::array();
  nlohmann::ordered_json links = nlohmann::ordered_json::array();
  int next = 0;
  visit(e.root, next, -1, [&](const ExplainNode& n, int id, int parent) {
    nlohmann::ordered_json node;
    node["id"] = id;
    node["iri"] = compact(n.term, prefixes);
    node["class"] = n.cls ? compact(*n.cls, prefixes) : "";
    node["label"] = n.label;
    if (n.cycle) node["cycle"] = true;
    if (n.shared) node["shared"] = true;
    nodes.push_back(std::move(node));
    if (parent >= 0) links.push_back({{"from", parent}, {"to", id}, {"relation", n.relation}});
  });
  nlohmann::ordered_json out;
  out["root"] = compact(e.root.term, prefixes);
  out["nodes"] = std::move(nodes);
  out["edges"] = std::move(links);
  out["truncated"] = e.truncated;
  return out.dump(2) + "\n";
}

std::string explanation_dot(const Explanation& e, const PrefixMap& prefixes) {
  auto quote = [](const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
      if (c == '"' || c == '\\') out += '\\';
      if (c == '\n') {
        out += "\\n";
        continue;
      }
      out += c;
    }
    return out + "\"";
  };
  std::ostringstream out;
  out << "digraph explanation {\n  rankdir=BT;\n  node [shape=box];\n";
  int next = 0;
  visit(e.root, next, -1, [&](const ExplainNode& n, int id, int parent) {
    std::string text = compact(n.term, prefixes);
    if (n.cls) text += "\n" + compact(*n.cls, prefixes);
    out << "  n" << id << " [label=" << quote(text);
    if (n.cycle || n.shared) out << ", style=dashed";
    out << "];\n";
    if (parent >= 0) out << "  n" << parent << " -> n" << id << " [label=" << quote(n.relation) << "];\n";
  });
  out << "}\n";
  return out.str();
}

std::string explanation_text(const Explanation& e, const PrefixMap& prefixes) {
  std::ostringstream out;
  auto rec = [&](auto&& self, const ExplainNode& n, int depth) -> void {
    out << std::string(static_cast<std::size_t>(depth) * 2, ' ');
    if (!n.relation.empty()) out << n.relation << " ";
    out << compact(n.term, prefixes);
    if (n.cls) out << " (" << compact(*n.cls, prefixes) << ")";
    if (n.cycle) out << " [cycle]";
    if (n.shared) out << " [see above]";
    out << "\n";
    for (const auto& c : n.children) self(self, c, depth + 1);
  };
  rec(rec, e.root, 0);
  if (e.truncated) out << "... truncated\n";
  return out.str();
}

}  // namespace bdi
