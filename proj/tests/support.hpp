#pragma once
// Shared test helpers: fixture access, random graph generators and the
// independent oracles the property tests compare against.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "bdi/cq.hpp"
#include "bdi/rdf.hpp"
#include "bdi/schema.hpp"
#include "bdi/temporal.hpp"
#include "bdi/turtle.hpp"
#include "bdi/vocab.hpp"

namespace bdi::test {

inline std::string fixture(const std::string& name) { return std::string(BDI_FIXTURE_DIR) + "/" + name; }

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Graph load(const std::string& name) { return read_turtle_file(fixture(name)); }

inline Iri B(std::string_view local) { return vocab::bdi(local); }
inline Iri ex(std::string_view local) { return Iri("http://example.org/t/" + std::string(local)); }
inline Term dt(const std::string& lexical) { return Literal(lexical, vocab::xsd_date_time()); }

/// A scratch directory removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("bdi_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

template <class T>
const T& pick(std::mt19937_64& rng, const std::vector<T>& v) {
  return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
}

inline bool coin(std::mt19937_64& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

// ---------------------------------------------------------------------------
// Random graphs over the registry vocabulary

/// Up to `max_triples` triples: typing with registered (and a few external)
/// classes plus edges over every registered property. Some objects are literals.
inline Graph random_schema_graph(std::mt19937_64& rng, const SchemaRegistry& reg, std::size_t max_triples = 50,
                                 std::size_t individuals = 8) {
  std::vector<Iri> classes;
  for (const auto& [iri, c] : reg.classes()) classes.push_back(iri);
  classes.push_back(vocab::dul("TimeInterval"));
  classes.push_back(vocab::dul("Agent"));
  std::vector<Iri> props;
  for (const auto& [iri, p] : reg.properties()) props.push_back(iri);
  props.push_back(B("unknownRelation"));
  std::vector<Term> nodes;
  for (std::size_t i = 0; i < individuals; ++i) nodes.push_back(ex("i" + std::to_string(i)));
  const std::vector<Term> literals = {Literal::plain("x"), Literal::lang("y", "en"), dt("2025-01-01T00:00:00Z")};

  Graph g;
  const auto n = std::uniform_int_distribution<std::size_t>(0, max_triples)(rng);
  while (g.size() < n) {
    const Term s = pick(rng, nodes);
    if (coin(rng, 0.35)) {
      g.insert(s, vocab::type(), pick(rng, classes));
    } else {
      const Term o = coin(rng, 0.08) ? pick(rng, literals) : pick(rng, nodes);
      g.insert(s, pick(rng, props), o);
    }
  }
  return g;
}

// ---------------------------------------------------------------------------
// Closure oracle: naive fixpoint, every rule re-applied to every triple (and
// every pair for transitivity) until nothing changes.

inline Graph closure_oracle(const Graph& input, const SchemaRegistry& reg) {
  std::set<Triple> s(input.begin(), input.end());
  while (true) {
    std::vector<Triple> add;
    for (const auto& t : s) {
      if (t.predicate == vocab::type()) {
        const auto* o = as_iri(t.object);
        if (!o) continue;
        for (const auto& [iri, c] : reg.classes()) {
          if (iri == *o) {
            for (const auto& sup : c.superclasses)
              if (reg.find_class(sup)) add.emplace_back(t.subject, vocab::type(), sup);
          }
          if (std::find(c.equivalents.begin(), c.equivalents.end(), *o) != c.equivalents.end())
            add.emplace_back(t.subject, vocab::type(), iri);
        }
        continue;
      }
      const auto* p = reg.find_property(t.predicate);
      if (!p) continue;
      const bool node = !is_literal(t.object);
      for (const auto& sup : p->superproperties) add.emplace_back(t.subject, sup, t.object);
      if (p->inverse && node) add.emplace_back(t.object, *p->inverse, t.subject);
      if (p->domain) add.emplace_back(t.subject, vocab::type(), *p->domain);
      if (p->range && node) add.emplace_back(t.object, vocab::type(), *p->range);
      if (p->transitive) {
        for (const auto& u : s)
          if (u.predicate == t.predicate && u.subject == t.object) add.emplace_back(t.subject, t.predicate, u.object);
      }
    }
    bool changed = false;
    for (auto& t : add) changed |= s.insert(std::move(t)).second;
    if (!changed) break;
  }
  Graph out;
  for (const auto& t : s) out.insert(t);
  return out;
}

// ---------------------------------------------------------------------------
// Random graphs shaped for the competency questions

inline Graph random_cq_graph(std::mt19937_64& rng, std::size_t max_triples = 200) {
  const std::vector<Iri> classes = {
      B("MentalEntity"), B("MentalState"), B("Belief"),   B("Desire"),     B("Intention"), B("MentalProcess"),
      B("BeliefProcess"), B("Planning"),   B("Agent"),    B("WorldState"), B("Justification"), B("Goal"),
      B("Plan"),         B("Task")};
  const std::vector<Iri> edges = {
      B("hasMentalState"), B("hasBelief"),  B("hasPart"),   B("isProcessedBy"), B("refersTo"),  B("motivates"),
      B("fulfils"),        B("generates"),  B("modifies"),  B("suppresses"),    B("isTriggeredBy"), B("justifies"),
      B("addresses"),      B("specifies"),  B("defines"),   B("isMentalStateOf"), B("isDesireOf")};
  const std::vector<Iri> sequencing = {B("beginsWith"), B("endsWith"), B("hasComponent"), B("follows"),
                                       B("precedes")};
  std::vector<Term> nodes;
  for (int i = 0; i < 12; ++i) nodes.push_back(ex("n" + std::to_string(i)));
  std::vector<Term> instants;
  for (int i = 0; i < 5; ++i) {
    const Term t = ex("t" + std::to_string(i));
    instants.push_back(t);
  }

  Graph g;
  const auto target = std::uniform_int_distribution<std::size_t>(0, max_triples)(rng);
  // Instants carry concrete values so the temporal templates have something to resolve.
  for (int i = 0; i < 5; ++i) {
    if (g.size() + 1 > target) break;
    g.insert(instants[i], vocab::value(), dt("2025-01-01T00:00:0" + std::to_string(i * 2) + "Z"));
  }
  std::set<Term> temporal_done;
  std::size_t intervals = 0;
  while (g.size() < target) {
    const Term s = pick(rng, nodes);
    const double r = std::uniform_real_distribution<double>(0, 1)(rng);
    if (r < 0.3) {
      g.insert(s, vocab::type(), pick(rng, classes));
    } else if (r < 0.7) {
      g.insert(s, pick(rng, edges), pick(rng, nodes));
    } else if (r < 0.85) {
      g.insert(s, pick(rng, sequencing), pick(rng, nodes));
    } else if (temporal_done.insert(s).second) {
      // At most one temporal property of each kind per entity.
      if (coin(rng)) {
        const Term iv = ex("iv" + std::to_string(intervals++));
        g.insert(s, B("hasValidity"), iv);
        if (coin(rng, 0.9)) {
          const auto a = std::uniform_int_distribution<int>(0, 4)(rng);
          g.insert(iv, B("hasStartTime"), instants[a]);
          if (coin(rng)) g.insert(iv, B("hasEndTime"), instants[std::uniform_int_distribution<int>(a, 4)(rng)]);
        }
      }
      if (coin(rng)) g.insert(s, B("atTime"), coin(rng) ? pick(rng, instants) : dt("2025-01-01T00:00:03Z"));
    }
  }
  return g;
}

using Row = std::vector<std::optional<Term>>;

/// Every subject and object of `g`.
inline std::vector<Term> node_set(const Graph& g) {
  std::set<Term> out;
  for (const auto& t : g) {
    out.insert(t.subject);
    out.insert(t.object);
  }
  return {out.begin(), out.end()};
}

/// Brute-force CQ evaluator. Pattern templates enumerate every tuple of graph
/// nodes for their free variables; the temporal and sequencing templates are
/// re-derived from their definitions.
class CqOracle {
 public:
  explicit CqOracle(const Graph& g) : g_(g), nodes_(node_set(g)) {}

  std::set<Row> answer(const std::string& id, const CqParams& params) const {
    std::set<Row> rows;
    auto P = [&](const char* name) { return params.at(name); };
    auto has = [&](const Term& s, const char* p, const Term& o) { return !is_literal(s) && g_.has(s, B(p), o); };
    auto typed = [&](const Term& s, const char* c) { return !is_literal(s) && g_.has(s, vocab::type(), B(c)); };
    auto each = [&](const std::function<void(const Term&)>& f) {
      for (const auto& x : nodes_) f(x);
    };
    auto each2 = [&](const std::function<void(const Term&, const Term&)>& f) {
      for (const auto& x : nodes_)
        for (const auto& y : nodes_) f(x, y);
    };

    if (id == "CQ1") each([&](const Term& x) { if (typed(x, "MentalEntity")) rows.insert({x}); });
    if (id == "CQ2")
      each([&](const Term& x) { if (has(P("agent"), "hasMentalState", x) && typed(x, "MentalState")) rows.insert({x}); });
    if (id == "CQ3")
      each([&](const Term& x) { if (has(P("entity"), "hasPart", x) && typed(x, "MentalEntity")) rows.insert({x}); });
    if (id == "CQ4")
      each([&](const Term& x) { if (has(x, "isProcessedBy", P("agent")) && typed(x, "MentalProcess")) rows.insert({x}); });
    if (id == "CQ5")
      each([&](const Term& x) {
        if (typed(P("state"), "MentalState") && has(P("state"), "refersTo", x) && typed(x, "WorldState")) rows.insert({x});
      });
    if (id == "CQ6") each([&](const Term& x) { if (has(x, "motivates", P("desire")) && typed(x, "Belief")) rows.insert({x}); });
    if (id == "CQ7") each([&](const Term& x) { if (has(P("intention"), "fulfils", x) && typed(x, "Desire")) rows.insert({x}); });
    if (id == "CQ8")
      each([&](const Term& x) { if (has(x, "generates", P("state")) && typed(x, "MentalProcess")) rows.insert({x}); });
    if (id == "CQ9")
      each2([&](const Term& p, const Term& t) {
        if (has(p, "generates", P("entity")) && has(p, "atTime", t)) rows.insert({p, t});
      });
    if (id == "CQ10") each([&](const Term& x) { if (has(P("process"), "isTriggeredBy", x)) rows.insert({x}); });
    if (id == "CQ11")
      each([&](const Term& x) { if (has(x, "justifies", P("entity")) && typed(x, "Justification")) rows.insert({x}); });
    if (id == "CQ12") {
      each([&](const Term& x) { if (has(P("subject"), "addresses", x) && typed(x, "Goal")) rows.insert({x}); });
      each2([&](const Term& plan, const Term& x) {
        if (has(P("subject"), "specifies", plan) && has(plan, "addresses", x) && typed(x, "Goal")) rows.insert({x});
      });
    }
    if (id == "CQ13")
      each([&](const Term& x) { if (has(P("intention"), "specifies", x) && typed(x, "Plan")) rows.insert({x}); });
    if (id == "CQ14")
      each([&](const Term& x) { if (has(x, "defines", P("plan")) && typed(x, "Planning")) rows.insert({x}); });
    if (id == "CQ15") sequence(P("plan"), rows);
    if (id == "CQ16") {
      if (auto iv = extent(P("state"))) rows.insert({date(iv->first), iv->second ? std::optional<Term>(date(*iv->second)) : std::nullopt});
    }
    if (id == "CQ17") {
      const auto t = TimeInstant::parse(as_literal(P("instant"))->lexical());
      const auto agent = params.find("agent");
      each([&](const Term& x) {
        if (!(typed(x, "MentalState") || typed(x, "Belief") || typed(x, "Desire") || typed(x, "Intention"))) return;
        if (agent != params.end()) {
          const Term& a = agent->second;
          const bool held = has(a, "hasMentalState", x) || has(a, "hasBelief", x) || has(a, "hasDesire", x) ||
                            has(a, "hasIntention", x) || has(x, "isMentalStateOf", a) || has(x, "isBeliefOf", a) ||
                            has(x, "isDesireOf", a) || has(x, "isIntentionOf", a);
          if (!held) return;
        }
        const auto e = extent(x);
        if (!e) return;
        const bool anchor_only = g_.objects(x, B("hasValidity")).empty();
        const bool in = anchor_only ? t == e->first : (e->first <= t && (!e->second || t < *e->second));
        if (in) rows.insert({x});
      });
    }
    if (id == "CQ18") evolution(P("entity"), rows);
    return rows;
  }

 private:
  static Term date(const TimeInstant& t) { return dt(t.canonical()); }

  std::optional<TimeInstant> instant(const Term& n) const {
    if (const auto* lit = as_literal(n)) return TimeInstant::try_parse(lit->lexical());
    for (const auto& t : g_.match(n, vocab::value(), std::nullopt))
      if (const auto* lit = as_literal(t.object))
        if (auto v = TimeInstant::try_parse(lit->lexical())) return v;
    return std::nullopt;
  }

  // (start, end) of the validity interval, or (anchor, anchor) for atTime only.
  std::optional<std::pair<TimeInstant, std::optional<TimeInstant>>> extent(const Term& x) const {
    const auto validity = g_.objects(x, B("hasValidity"));
    if (!validity.empty()) {
      const auto starts = g_.objects(validity.front(), B("hasStartTime"));
      if (starts.empty()) return std::nullopt;
      const auto start = instant(starts.front());
      if (!start) return std::nullopt;
      const auto ends = g_.objects(validity.front(), B("hasEndTime"));
      if (ends.empty()) return std::make_pair(*start, std::optional<TimeInstant>());
      const auto end = instant(ends.front());
      if (!end) return std::nullopt;
      return std::make_pair(*start, end);
    }
    const auto anchors = g_.objects(x, B("atTime"));
    if (anchors.empty()) return std::nullopt;
    auto a = instant(anchors.front());
    if (!a) {
      const auto starts = g_.objects(anchors.front(), B("hasStartTime"));
      if (!starts.empty()) a = instant(starts.front());
    }
    if (!a) return std::nullopt;
    return std::make_pair(*a, std::optional<TimeInstant>(*a));
  }

  void sequence(const Term& plan, std::set<Row>& rows) const {
    const auto begins = g_.objects(plan, B("beginsWith"));
    const auto ends = g_.objects(plan, B("endsWith"));
    const auto parts = g_.objects(plan, B("hasComponent"));
    auto err = [](const std::string& s) { return std::optional<Term>(Literal::plain(s)); };
    Term cur;
    if (begins.size() > 1) {
      rows.insert({std::nullopt, std::nullopt, err("error: plan has " + std::to_string(begins.size()) + " beginsWith tasks")});
      return;
    }
    if (begins.size() == 1) {
      cur = begins[0];
    } else if (parts.size() == 1) {
      cur = parts[0];
    } else {
      if (!parts.empty()) rows.insert({std::nullopt, std::nullopt, err("error: plan has no beginsWith task")});
      return;
    }
    // b comes after a
    auto after = [&](const Term& b, const Term& a) {
      return g_.has(b, B("follows"), a) || g_.has(a, B("precedes"), b);
    };
    std::set<Term> visited;
    for (long pos = 1;; ++pos) {
      if (visited.count(cur)) {
        rows.insert({std::nullopt, cur, err("error: cycle in the task sequence")});
        return;
      }
      visited.insert(cur);
      rows.insert({Term(Literal(std::to_string(pos), vocab::xsd("integer"))), cur, std::nullopt});
      if (ends.size() == 1 && ends[0] == cur) return;
      std::vector<Term> succ;
      for (const auto& x : nodes_)
        if (x != cur && after(x, cur)) succ.push_back(x);
      std::vector<Term> direct;
      for (const auto& x : succ) {
        bool through_other = false;
        for (const auto& y : succ)
          if (y != x && after(x, y)) through_other = true;
        if (!through_other) direct.push_back(x);
      }
      if (direct.empty()) {
        if (ends.size() == 1) rows.insert({std::nullopt, cur, err("error: sequence stops before the endsWith task")});
        return;
      }
      if (direct.size() > 1) {
        rows.insert({std::nullopt, cur, err("error: branch with " + std::to_string(direct.size()) + " immediate successors")});
        return;
      }
      cur = direct[0];
    }
  }

  void evolution(const Term& entity, std::set<Row>& rows) const {
    std::set<Term> chain{entity};
    for (bool grew = true; grew;) {
      grew = false;
      for (const auto& p : nodes_)
        for (const auto& s : std::vector<Term>(chain.begin(), chain.end()))
          if (g_.has(p, B("suppresses"), s))
            for (const auto& n : g_.objects(p, B("modifies"))) grew |= chain.insert(n).second;
    }
    for (const auto& p : nodes_) {
      if (!is_iri(p)) continue;
      int rank = 0;  // 3 modifies, 2 generates, 1 suppresses
      for (const auto& s : chain) {
        if (g_.has(p, B("modifies"), s)) rank = std::max(rank, 3);
        if (g_.has(p, B("generates"), s)) rank = std::max(rank, 2);
        if (g_.has(p, B("suppresses"), s)) rank = std::max(rank, 1);
      }
      if (!rank) continue;
      std::optional<Term> at;
      const auto anchors = g_.objects(p, B("atTime"));
      if (!anchors.empty())
        if (auto t = instant(anchors.front())) at = date(*t);
      const char* effect = rank == 3 ? "modifies" : rank == 2 ? "generates" : "suppresses";
      rows.insert({at, p, Term(Literal::plain(effect))});
    }
  }

  const Graph& g_;
  std::vector<Term> nodes_;
};

// ---------------------------------------------------------------------------
// Graph isomorphism for small graphs. IRIs in the bdi:/rdf: namespaces and
// literals are fixed; every other node may be renamed.

inline bool is_fixed(const Term& t) {
  if (is_literal(t)) return true;
  const auto* i = as_iri(t);
  return i && (vocab::in_namespace(*i, vocab::kBdiNs) || vocab::in_namespace(*i, vocab::kRdfNs));
}

inline bool isomorphic(const Graph& a, const Graph& b) {
  if (a.size() != b.size()) return false;
  std::vector<Term> va, vb;
  for (const auto& n : node_set(a))
    if (!is_fixed(n)) va.push_back(n);
  for (const auto& n : node_set(b))
    if (!is_fixed(n)) vb.push_back(n);
  if (va.size() != vb.size()) return false;

  // Local signature: multiset of (direction, predicate, fixed neighbour or "*").
  auto signature = [](const Graph& g, const Term& n) {
    std::multiset<std::string> sig;
    for (const auto& t : g) {
      if (t.subject == n) sig.insert("out " + t.predicate.str() + " " + (is_fixed(t.object) ? to_ntriples(t.object) : "*"));
      if (t.object == n) sig.insert("in " + t.predicate.str() + " " + (is_fixed(t.subject) ? to_ntriples(t.subject) : "*"));
    }
    return sig;
  };
  std::map<Term, std::multiset<std::string>> sa, sb;
  for (const auto& n : va) sa[n] = signature(a, n);
  for (const auto& n : vb) sb[n] = signature(b, n);

  std::map<Term, Term> map;
  std::set<Term> used;
  auto image = [&](const Term& t) -> std::optional<Term> {
    if (is_fixed(t)) return t;
    auto it = map.find(t);
    if (it == map.end()) return std::nullopt;
    return it->second;
  };
  // Every triple of `a` whose nodes are all mapped must exist in `b`.
  auto consistent = [&]() {
    for (const auto& t : a) {
      auto s = image(t.subject), o = image(t.object);
      if (s && o && !b.has(*s, t.predicate, *o)) return false;
    }
    return true;
  };
  std::function<bool(std::size_t)> search = [&](std::size_t i) {
    if (i == va.size()) return true;
    for (const auto& cand : vb) {
      if (used.count(cand) || sa[va[i]] != sb[cand]) continue;
      map[va[i]] = cand;
      used.insert(cand);
      if (consistent() && search(i + 1)) return true;
      map.erase(va[i]);
      used.erase(cand);
    }
    return false;
  };
  return search(0);
}

}  // namespace bdi::test
