#include "bdi/cq.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <sstream>

#include "bdi/mental_types.hpp"
#include "bdi/vocab.hpp"

namespace bdi {

namespace {

PatternTerm var(const char* name) { return Variable{name}; }
PatternTerm bdi_term(const char* local) { return Term(vocab::bdi(local)); }

Pattern edge(const char* s, const char* p, const char* o) { return Pattern{var(s), bdi_term(p), var(o)}; }
Pattern is_a(const char* s, const char* cls) { return Pattern{var(s), Term(vocab::type()), bdi_term(cls)}; }

CqParam node(const char* name, const char* doc) { return CqParam{name, CqParam::Type::Node, true, doc}; }

std::vector<CqTemplate> build() {
  using P = std::vector<Pattern>;
  std::vector<CqTemplate> t;
  t.push_back({"CQ1", "What are mental entities?", {}, {"entity"}, {P{is_a("entity", "MentalEntity")}}});
  t.push_back({"CQ2",
               "What mental states (i.e. befiefs, desires, and intentions) does an agent hold?",
               {node("agent", "the agent")},
               {"state"},
               {P{edge("agent", "hasMentalState", "state"), is_a("state", "MentalState")}}});
  t.push_back({"CQ3",
               "What are the constituent mental entities that form part of a given mental entity?",
               {node("entity", "the whole")},
               {"part"},
               {P{edge("entity", "hasPart", "part"), is_a("part", "MentalEntity")}}});
  t.push_back({"CQ4",
               "What mental processes has an agent undergone?",
               {node("agent", "the agent")},
               {"process"},
               {P{edge("process", "isProcessedBy", "agent"), is_a("process", "MentalProcess")}}});
  t.push_back({"CQ5",
               "What is the world state that a given mental state is about?",
               {node("state", "a belief, desire or intention")},
               {"world"},
               {P{is_a("state", "MentalState"), edge("state", "refersTo", "world"), is_a("world", "WorldState")}}});
  t.push_back({"CQ6",
               "What beliefs motivated the formation of a given desire?",
               {node("desire", "the desire")},
               {"belief"},
               {P{edge("belief", "motivates", "desire"), is_a("belief", "Belief")}}});
  t.push_back({"CQ7",
               "Which desire does a particular intention fulfil?",
               {node("intention", "the intention")},
               {"desire"},
               {P{edge("intention", "fulfils", "desire"), is_a("desire", "Desire")}}});
  t.push_back({"CQ8",
               "Which mental process generated a given belief, desire, or intention?",
               {node("state", "a belief, desire or intention")},
               {"process"},
               {P{edge("process", "generates", "state"), is_a("process", "MentalProcess")}}});
  t.push_back({"CQ9",
               "When was a mental entity generated?",
               {node("entity", "the generated entity")},
               {"process", "time"},
               {P{edge("process", "generates", "entity"), edge("process", "atTime", "time")}}});
  t.push_back({"CQ10",
               "What triggered a mental process?",
               {node("process", "the mental process")},
               {"trigger"},
               {P{edge("process", "isTriggeredBy", "trigger")}}});
  t.push_back({"CQ11",
               "What justifications support a specific mental entity?",
               {node("entity", "the justified entity")},
               {"justification"},
               {P{edge("justification", "justifies", "entity"), is_a("justification", "Justification")}}});
  t.push_back({"CQ12",
               "What goal does a given intention or plan aim to fulfil?",
               {node("subject", "an intention or a plan")},
               {"goal"},
               {P{edge("subject", "addresses", "goal"), is_a("goal", "Goal")},
                P{edge("subject", "specifies", "plan"), edge("plan", "addresses", "goal"), is_a("goal", "Goal")}}});
  t.push_back({"CQ13",
               "What plan has been specified by a particular intention?",
               {node("intention", "the intention")},
               {"plan"},
               {P{edge("intention", "specifies", "plan"), is_a("plan", "Plan")}}});
  t.push_back({"CQ14",
               "What planning process led to the creation of a particular plan?",
               {node("plan", "the plan")},
               {"planning"},
               {P{edge("planning", "defines", "plan"), is_a("planning", "Planning")}}});
  t.push_back({"CQ15",
               "What is the ordered sequence of tasks that compose a given plan?",
               {node("plan", "the plan")},
               {"position", "task", "note"},
               {}});
  t.push_back({"CQ16",
               "What is the temporal validity (start and end time) of a mental state?",
               {node("state", "the mental state")},
               {"start", "end"},
               {}});
  t.push_back({"CQ17",
               "What mental states were valid at a specific point in time?",
               {CqParam{"instant", CqParam::Type::Instant, true, "an xsd:dateTime"},
                CqParam{"agent", CqParam::Type::Node, false, "restrict to one agent"}},
               {"state"},
               {}});
  t.push_back({"CQ18",
               "How has a mental entity evolved over time?",
               {node("entity", "the mental entity")},
               {"time", "process", "effect"},
               {}});
  return t;
}

using Row = std::vector<std::optional<Term>>;

Term date_time(const TimeInstant& t) { return Literal(t.canonical(), vocab::xsd_date_time()); }
Term note(const std::string& s) { return Literal::plain(s); }

void cq15(const Term& plan, const Graph& g, std::set<Row>& rows) {
  const Iri follows = vocab::bdi("follows");
  const Iri precedes = vocab::bdi("precedes");
  auto successors = [&](const Term& t) {
    std::set<Term> out;
    for (auto& s : g.subjects(follows, t)) out.insert(std::move(s));
    for (auto& s : g.objects(t, precedes)) out.insert(std::move(s));
    out.erase(t);
    return out;
  };
  auto after = [&](const Term& a, const Term& b) { return g.has(a, follows, b) || g.has(b, precedes, a); };

  const auto begins = g.objects(plan, vocab::bdi("beginsWith"));
  const auto ends = g.objects(plan, vocab::bdi("endsWith"));
  const auto components = g.objects(plan, vocab::bdi("hasComponent"));

  Term current;
  if (begins.size() == 1) {
    current = begins.front();
  } else if (begins.size() > 1) {
    rows.insert(Row{std::nullopt, std::nullopt, note("error: plan has " + std::to_string(begins.size()) +
                                                     " beginsWith tasks")});
    return;
  } else if (components.size() == 1) {
    current = components.front();
  } else if (components.empty()) {
    return;
  } else {
    rows.insert(Row{std::nullopt, std::nullopt, note("error: plan has no beginsWith task")});
    return;
  }

  std::set<Term> seen;
  long position = 0;
  while (true) {
    if (!seen.insert(current).second) {
      rows.insert(Row{std::nullopt, current, note("error: cycle in the task sequence")});
      return;
    }
    rows.insert(Row{Term(Literal(std::to_string(++position), vocab::xsd("integer"))), current, std::nullopt});
    if (ends.size() == 1 && ends.front() == current) return;

    const auto next = successors(current);
    std::vector<Term> immediate;
    for (const auto& c : next) {
      const bool skipped = std::any_of(next.begin(), next.end(), [&](const Term& o) { return o != c && after(c, o); });
      if (!skipped) immediate.push_back(c);
    }
    if (immediate.empty()) {
      if (ends.size() == 1)
        rows.insert(Row{std::nullopt, current, note("error: sequence stops before the endsWith task")});
      return;
    }
    if (immediate.size() > 1) {
      rows.insert(Row{std::nullopt, current,
                      note("error: branch with " + std::to_string(immediate.size()) + " immediate successors")});
      return;
    }
    current = immediate.front();
  }
}

void cq16(const Term& state, const Graph& g, const TimeMap* tm, std::set<Row>& rows) {
  try {
    const auto extent = temporal_extent(state, g, tm);
    const auto& iv = extent.interval;
    rows.insert(Row{date_time(iv.start), iv.end ? std::optional<Term>(date_time(*iv.end)) : std::nullopt});
  } catch (const TemporalError&) {
  }
}

void cq17(const TimeInstant& t, const std::optional<Term>& agent, const Graph& g, const TimeMap* tm,
          std::set<Row>& rows) {
  if (agent) {
    for (auto& s : states_valid_at(*agent, t, g, tm)) rows.insert(Row{std::move(s)});
    return;
  }
  std::set<Term> states;
  for (const char* cls : {"MentalState", "Belief", "Desire", "Intention"})
    for (auto& s : g.subjects(vocab::type(), vocab::bdi(cls))) states.insert(std::move(s));
  for (const auto& s : states) {
    try {
      if (valid_at(s, t, g, tm)) rows.insert(Row{s});
    } catch (const TemporalError&) {
    }
  }
}

void cq18(const Term& entity, const Graph& g, const TimeMap* tm, std::set<Row>& rows) {
  for (const auto& h : history(entity, g, tm)) {
    rows.insert(Row{h.at ? std::optional<Term>(date_time(*h.at)) : std::nullopt, Term(h.process),
                    note(std::string(to_string(h.effect)))});
  }
}

}  // namespace

const std::vector<CqTemplate>& list_templates() {
  static const std::vector<CqTemplate> templates = build();
  return templates;
}

const CqTemplate& find_template(const std::string& id) {
  std::string key = id;
  std::transform(key.begin(), key.end(), key.begin(), [](unsigned char c) { return std::toupper(c); });
  for (const auto& t : list_templates())
    if (t.id == key) return t;
  throw CqError("unknown competency question '" + id + "' (expected CQ1 to CQ18)");
}

Term parse_param(const CqParam& p, const std::string& text, const PrefixMap& prefixes) {
  if (p.type == CqParam::Type::Instant) {
    const auto t = TimeInstant::try_parse(text);
    if (!t) throw CqError("parameter '" + p.name + "': '" + text + "' is not an xsd:dateTime");
    return date_time(*t);
  }
  if (auto iri = expand_name(text, prefixes)) return *iri;
  if (Iri::is_valid(text)) return Iri(text);
  throw CqError("parameter '" + p.name + "': cannot resolve '" + text + "' to an IRI");
}

ResultSet answer(const std::string& id, const CqParams& params, const Graph& g, const TimeMap* timemap) {
  const CqTemplate& tpl = find_template(id);
  for (const auto& [name, value] : params) {
    const bool known = std::any_of(tpl.params.begin(), tpl.params.end(), [&](const CqParam& p) { return p.name == name; });
    if (!known) throw CqError(tpl.id + " has no parameter '" + name + "'");
  }
  for (const auto& p : tpl.params)
    if (p.required && !params.count(p.name)) throw CqError(tpl.id + " needs parameter '" + p.name + "'");
  for (const auto& p : tpl.params) {
    const auto it = params.find(p.name);
    if (it != params.end() && p.type == CqParam::Type::Node && is_literal(it->second))
      throw CqError(tpl.id + " parameter '" + p.name + "' must be an IRI or blank node");
  }

  ResultSet rs{tpl.columns, {}};
  std::set<Row> rows;
  if (!tpl.branches.empty()) {
    Bindings seed(params.begin(), params.end());
    for (const auto& branch : tpl.branches) {
      for (const auto& b : solve(branch, g, seed)) {
        Row row;
        for (const auto& col : tpl.columns) {
          auto it = b.find(col);
          row.push_back(it == b.end() ? std::nullopt : std::optional<Term>(it->second));
        }
        rows.insert(std::move(row));
      }
    }
  } else if (tpl.id == "CQ15") {
    cq15(params.at("plan"), g, rows);
  } else if (tpl.id == "CQ16") {
    cq16(params.at("state"), g, timemap, rows);
  } else if (tpl.id == "CQ17") {
    const auto* lit = as_literal(params.at("instant"));
    const auto t = lit ? TimeInstant::try_parse(lit->lexical()) : std::nullopt;
    if (!t) throw CqError("CQ17 needs an xsd:dateTime instant");
    const auto agent = params.find("agent");
    cq17(*t, agent == params.end() ? std::nullopt : std::optional<Term>(agent->second), g, timemap, rows);
  } else if (tpl.id == "CQ18") {
    cq18(params.at("entity"), g, timemap, rows);
  }
  rs.rows.assign(rows.begin(), rows.end());
  if (tpl.id == "CQ15" || tpl.id == "CQ18") {
    // Sequence order, not term order.
    auto key = [&](const Row& r) { return r[0]; };
    if (tpl.id == "CQ15") {
      std::stable_sort(rs.rows.begin(), rs.rows.end(), [&](const Row& a, const Row& b) {
        auto pos = [](const Row& r) -> long {
          const auto* lit = r[0] ? as_literal(*r[0]) : nullptr;
          return lit ? std::stol(lit->lexical()) : std::numeric_limits<long>::max();
        };
        return pos(a) < pos(b);
      });
    } else {
      std::stable_sort(rs.rows.begin(), rs.rows.end(), [&](const Row& a, const Row& b) {
        if (key(a).has_value() != key(b).has_value()) return key(a).has_value();
        if (!key(a)) return false;
        return TimeInstant::parse(as_literal(*key(a))->lexical()) < TimeInstant::parse(as_literal(*key(b))->lexical());
      });
    }
  }
  return rs;
}

namespace {

std::string cell(const std::optional<Term>& t, const PrefixMap& prefixes) {
  if (!t) return "";
  if (const auto* lit = as_literal(*t)) return lit->lexical();
  return compact(*t, prefixes);
}

}  // namespace

std::string format_table(const ResultSet& rs, const PrefixMap& prefixes) {
  std::vector<std::size_t> width;
  for (const auto& c : rs.columns) width.push_back(c.size());
  std::vector<std::vector<std::string>> cells;
  for (const auto& row : rs.rows) {
    std::vector<std::string> line;
    for (std::size_t i = 0; i < row.size(); ++i) {
      line.push_back(cell(row[i], prefixes));
      width[i] = std::max(width[i], line.back().size());
    }
    cells.push_back(std::move(line));
  }
  std::ostringstream out;
  auto emit = [&](const std::vector<std::string>& line) {
    std::string text;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (i) text += "  ";
      text += line[i];
      if (i + 1 < line.size()) text += std::string(width[i] - line[i].size(), ' ');
    }
    while (!text.empty() && text.back() == ' ') text.pop_back();
    out << text << "\n";
  };
  emit(rs.columns);
  std::vector<std::string> rule;
  for (auto w : width) rule.push_back(std::string(w, '-'));
  emit(rule);
  for (const auto& line : cells) emit(line);
  out << "(" << rs.rows.size() << " row" << (rs.rows.size() == 1 ? "" : "s") << ")\n";
  return out.str();
}

std::string format_csv(const ResultSet& rs, const PrefixMap& prefixes) {
  auto field = [](const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
      if (c == '"') out += '"';
      out += c;
    }
    return out + "\"";
  };
  std::string out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += field(cells[i]);
    }
    out += "\r\n";
  };
  line(rs.columns);
  for (const auto& row : rs.rows) {
    std::vector<std::string> cells;
    for (const auto& c : row) cells.push_back(cell(c, prefixes));
    line(cells);
  }
  return out;
}

}  // namespace bdi
