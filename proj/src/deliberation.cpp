#include "bdi/deliberation.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <set>
#include "json.hpp"

#include "bdi/vocab.hpp"

namespace bdi {

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::Ingested: return "ingested";
    case Provenance::Derived: return "derived";
    case Provenance::Builtin: return "builtin";
  }
  return "?";
}

std::string_view to_string(RunStatus s) {
  switch (s) {
    case RunStatus::Quiescent: return "quiescent";
    case RunStatus::CycleLimit: return "cycle-limit";
    case RunStatus::Failed: return "failed";
  }
  return "?";
}

std::uint64_t binding_hash(const Bindings& b) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : canonical_key(b)) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string binding_hash_hex(const Bindings& b) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(binding_hash(b)));
  return buf;
}

TimeInstant default_clock_start() { return TimeInstant::parse("2025-01-01T00:00:00Z"); }

std::vector<BeliefAtom> KBState::atom_list() const {
  std::vector<BeliefAtom> out;
  out.reserve(atoms.size());
  for (const auto& t : atoms) {
    const auto it = meta.find(t);
    BeliefAtom a{t, Provenance::Ingested, "", 0, clock_start};
    if (it != meta.end()) {
      a.provenance = it->second.provenance;
      a.rule = it->second.rule;
      a.seq = it->second.seq;
      a.at = it->second.at;
    }
    out.push_back(std::move(a));
  }
  std::sort(out.begin(), out.end(), [](const BeliefAtom& x, const BeliefAtom& y) { return x.seq < y.seq; });
  return out;
}

KBState ingest(const Graph& g, const TimeInstant& clock_start) {
  KBState kb;
  kb.atoms = g;
  kb.clock_start = clock_start;
  for (const auto& t : g) kb.meta.emplace(t, KBState::Meta{Provenance::Ingested, "", kb.next_seq++, clock_start});
  for (const auto& t : g.match(std::nullopt, vocab::fired_rule(), std::nullopt)) {
    const auto* rule = as_literal(t.object);
    if (!rule) continue;
    ++kb.firings;
    for (const auto& key : g.objects(t.subject, vocab::binding_key()))
      if (const auto* k = as_literal(key)) kb.fired.emplace(rule->lexical(), k->lexical());
  }
  kb.minter = Minter::scan(g);
  return kb;
}

namespace {

bool before(const Instance& a, const Instance& b) {
  if (a.rule->priority != b.rule->priority) return a.rule->priority > b.rule->priority;
  if (a.rule->id != b.rule->id) return a.rule->id < b.rule->id;
  return a.bindings < b.bindings;
}

bool check_valid_at(const Condition& c, const Bindings& b, const KBState& kb, const RunOptions& opts) {
  const auto entity = resolve(c.entity, b);
  if (!entity) return false;
  std::optional<TimeInstant> t = kb.clock_start;
  if (c.instant) {
    const auto node = resolve(*c.instant, b);
    t = node ? resolve_instant(*node, kb.atoms, opts.timemap) : std::nullopt;
  }
  if (!t) return false;
  try {
    return valid_at(*entity, *t, kb.atoms, opts.timemap);
  } catch (const TemporalError&) {
    return false;
  }
}

void instances_from(const Rule& rule, const Triple& head_atom, const KBState& kb, const RunOptions& opts,
                    std::vector<Instance>& out) {
  Bindings seed;
  if (!unify(rule.head, head_atom, seed)) return;
  std::vector<Pattern> positives;
  for (const auto& c : rule.conditions)
    if (c.kind == Condition::Kind::Triple && !c.negated) positives.push_back(c.pattern);

  for (auto& b : solve(positives, kb.atoms, seed)) {
    bool ok = true;
    for (const auto& c : rule.conditions) {
      if (c.kind == Condition::Kind::Triple && c.negated) {
        ok = !has_match(c.pattern, kb.atoms, b);
      } else if (c.kind == Condition::Kind::ValidAt) {
        ok = check_valid_at(c, b, kb, opts) != c.negated;
      }
      if (!ok) break;
    }
    if (!ok) continue;
    if (kb.fired.count({rule.id, binding_hash_hex(b)})) continue;

    Instance inst{&rule, std::move(b), {head_atom}};
    for (const auto& p : positives) {
      Triple t(*resolve(p.subject, inst.bindings), std::get<Iri>(*resolve(p.predicate, inst.bindings)),
               *resolve(p.object, inst.bindings));
      inst.matched.push_back(std::move(t));
    }
    out.push_back(std::move(inst));
  }
}

}  // namespace

std::vector<Instance> agenda(const KBState& kb, const RuleSet& rules, const RunOptions& opts) {
  std::vector<std::pair<const Rule*, Triple>> work;
  for (const auto& r : rules.rules)
    for (auto& t : candidates(r.head, kb.atoms, {})) work.emplace_back(&r, std::move(t));

  std::vector<std::vector<Instance>> slots(work.size());
  const long n = static_cast<long>(work.size());
#ifdef BDI_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic, 4) if (opts.exec == Execution::Parallel)
#endif
  for (long i = 0; i < n; ++i) {
    const auto& [rule, atom] = work[static_cast<std::size_t>(i)];
    instances_from(*rule, atom, kb, opts, slots[static_cast<std::size_t>(i)]);
  }

  std::vector<Instance> out;
  for (auto& s : slots)
    for (auto& inst : s) out.push_back(std::move(inst));
  std::sort(out.begin(), out.end(), before);
  return out;
}

namespace {

Iri iri_arg(const PatternTerm& t, const Bindings& b, const char* role) {
  const auto v = resolve(t, b);
  if (!v) throw MentalError(std::string(role) + " is unbound");
  const auto* iri = as_iri(*v);
  if (!iri) throw MentalError(std::string(role) + " " + to_ntriples(*v) + " is not an IRI");
  return *iri;
}

Term term_arg(const PatternTerm& t, const Bindings& b) {
  auto v = resolve(t, b);
  if (!v) throw MentalError("unbound argument");
  return *v;
}

std::string fill_text(const std::string& text, const Bindings& b, const PrefixMap& prefixes) {
  std::string out;
  for (std::size_t i = 0; i < text.size();) {
    if (text[i] == '?') {
      std::size_t j = i + 1;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
      auto it = b.find(text.substr(i + 1, j - i - 1));
      if (j > i + 1 && it != b.end()) {
        if (const auto* lit = as_literal(it->second))
          out += lit->lexical();
        else
          out += compact(it->second, prefixes);
        i = j;
        continue;
      }
    }
    out += text[i++];
  }
  return out;
}

class Firing {
 public:
  Firing(KBState& kb, const Instance& inst, const RunOptions& opts)
      : kb_(kb), inst_(inst), opts_(opts), scratch_(kb.atoms), session_(scratch_, load_schema(), kb.minter) {}

  TraceEvent execute(std::size_t cycle) {
    const TimeInstant at = kb_.clock_start.plus_seconds(static_cast<std::int64_t>(kb_.firings));
    const ProcessKind kind = process_kind();
    const Iri agent = find_agent();

    std::optional<Term> trigger;
    const Triple& head = inst_.matched.front();
    for (const Term* t : {&head.subject, &head.object}) {
      if (session_.is_a(*t, "MentalEntity") || session_.is_a(*t, "WorldState")) {
        trigger = *t;
        break;
      }
    }

    std::set<Iri> reasons;
    for (const auto& m : inst_.matched) {
      for (const Term* t : {&m.subject, &m.object}) {
        const auto* iri = as_iri(*t);
        if (!iri) continue;
        if (session_.is_a(*iri, kind == ProcessKind::Planning ? "Intention" : "MentalState")) reasons.insert(*iri);
      }
    }

    const auto process = session_.create_process(agent, kind, at, trigger, {reasons.begin(), reasons.end()});
    Bindings b = inst_.bindings;
    for (const auto& a : inst_.rule->tail) apply(a, b, process.id, at);

    scratch_.insert(process.id, vocab::fired_rule(), Literal::plain(inst_.rule->id));
    scratch_.insert(process.id, vocab::binding_key(), Literal::plain(binding_hash_hex(inst_.bindings)));
    commit(at);
    return TraceEvent{cycle, inst_.rule->id, inst_.bindings, process.id};
  }

 private:
  ProcessKind process_kind() {
    std::set<ProcessKind> kinds;
    for (const auto& a : inst_.rule->tail) {
      switch (a.kind) {
        case ActionKind::AssertState: kinds.insert(process_for(a.state_kind)); break;
        case ActionKind::Modify:
        case ActionKind::Suppress: {
          const auto k = session_.state_kind(iri_arg(a.args[0], inst_.bindings, "state"));
          if (!k) throw MentalError(to_string(a.kind).data() + std::string(": target is not a MentalState"));
          kinds.insert(process_for(*k));
          break;
        }
        case ActionKind::DefinePlan: kinds.insert(ProcessKind::Planning); break;
        default: break;
      }
    }
    if (kinds.size() > 1) throw MentalError("rule '" + inst_.rule->id + "' mixes actions of different process kinds");
    return kinds.empty() ? ProcessKind::Generic : *kinds.begin();
  }

  std::optional<Iri> agent_of(const Term& node) {
    const auto* iri = as_iri(node);
    if (!iri) return std::nullopt;
    if (session_.is_a(*iri, "Agent")) return *iri;
    if (session_.is_a(*iri, "MentalState")) return session_.holder_of(*iri);
    if (session_.is_a(*iri, "MentalProcess")) {
      for (const auto& a : scratch_.objects(*iri, vocab::bdi("isProcessedBy")))
        if (const auto* ai = as_iri(a)) return *ai;
    }
    return std::nullopt;
  }

  Iri find_agent() {
    const Bindings& b = inst_.bindings;
    for (const auto& a : inst_.rule->tail) {
      std::optional<Term> probe;
      if (a.kind == ActionKind::Emit) continue;
      if (a.kind == ActionKind::AssertState && a.args.size() == 2) {
        return iri_arg(a.args[0], b, "agent");
      }
      if (!a.args.empty()) probe = resolve(a.args[0], b);
      if (probe) {
        if (auto agent = agent_of(*probe)) return *agent;
      }
    }
    for (const auto& m : inst_.matched)
      for (const Term* t : {&m.subject, &m.object})
        if (auto agent = agent_of(*t)) return *agent;
    throw MentalError("cannot determine which agent processes rule '" + inst_.rule->id + "'");
  }

  void apply(const Action& a, Bindings& b, const Iri& process, const TimeInstant& at) {
    auto bind_result = [&](const Iri& id) {
      if (a.bind_as) b[*a.bind_as] = id;
    };
    switch (a.kind) {
      case ActionKind::AssertState: {
        Iri agent, world;
        if (a.args.size() == 2) {
          agent = iri_arg(a.args[0], b, "agent");
          world = iri_arg(a.args[1], b, "world state");
        } else {
          const Iri src = iri_arg(a.args[0], b, "source state");
          auto holder = session_.holder_of(src);
          if (!session_.state_kind(src) || !holder)
            throw MentalError(compact(src, scratch_.prefixes()) + " is not a held MentalState");
          agent = *holder;
          const auto refs = scratch_.objects(src, vocab::bdi("refersTo"));
          if (refs.empty() || !as_iri(refs.front()))
            throw MentalError(compact(src, scratch_.prefixes()) + " refers to no world state");
          world = *as_iri(refs.front());
        }
        bind_result(session_.assert_state(agent, a.state_kind, world, at, process).id);
        break;
      }
      case ActionKind::Modify: {
        std::optional<Iri> world;
        if (a.args.size() == 2) world = iri_arg(a.args[1], b, "world state");
        bind_result(session_.modify_state(iri_arg(a.args[0], b, "state"), process, at, world).id);
        break;
      }
      case ActionKind::Suppress: session_.suppress_state(iri_arg(a.args[0], b, "state"), process, at); break;
      case ActionKind::Link:
        session_.link_states(iri_arg(a.args[0], b, "source"), a.relation, iri_arg(a.args[1], b, "target"));
        break;
      case ActionKind::Justify: {
        std::vector<Iri> targets;
        for (const auto& t : a.args) targets.push_back(iri_arg(t, b, "justified entity"));
        bind_result(session_.justify(targets, fill_text(a.text, b, scratch_.prefixes())).id);
        break;
      }
      case ActionKind::Emit: {
        Term s = term_arg(a.args[0], b);
        if (is_literal(s)) throw MentalError("emit: literal subject " + to_ntriples(s));
        session_.emit(Triple(std::move(s), iri_arg(a.args[1], b, "predicate"), term_arg(a.args[2], b)));
        break;
      }
      case ActionKind::DefinePlan: {
        std::vector<Iri> tasks;
        for (std::size_t i = 2; i < a.args.size(); ++i) tasks.push_back(iri_arg(a.args[i], b, "task"));
        bind_result(
            session_.define_plan(process, iri_arg(a.args[0], b, "intention"), iri_arg(a.args[1], b, "goal"), tasks).id);
        break;
      }
    }
  }

  void commit(const TimeInstant& at) {
    std::vector<Triple> added;
    for (const auto& t : scratch_)
      if (!kb_.atoms.contains(t)) added.push_back(t);
    std::vector<Triple> inferred;
    if (opts_.materialize) inferred = close_incremental(scratch_, added, load_schema(), nullptr, opts_.exec);

    for (const auto& t : added)
      kb_.meta[t] = KBState::Meta{Provenance::Derived, inst_.rule->id, kb_.next_seq++, at};
    for (const auto& t : inferred) kb_.meta[t] = KBState::Meta{Provenance::Builtin, "", kb_.next_seq++, at};
    kb_.atoms = std::move(scratch_);
    kb_.minter = session_.minter();
    ++kb_.firings;
    kb_.fired.emplace(inst_.rule->id, binding_hash_hex(inst_.bindings));
  }

  KBState& kb_;
  const Instance& inst_;
  const RunOptions& opts_;
  Graph scratch_;
  MentalSession session_;
};

}  // namespace

RunResult run(KBState& kb, const RuleSet& rules, const RunOptions& opts) {
  RunResult result;
  for (std::size_t cycle = 1; cycle <= opts.max_cycles; ++cycle) {
    const auto ag = agenda(kb, rules, opts);
    if (ag.empty()) return result;
    try {
      kb.trace.push_back(Firing(kb, ag.front(), opts).execute(kb.trace.size() + 1));
    } catch (const std::exception& e) {
      result.status = RunStatus::Failed;
      result.error = "cycle " + std::to_string(cycle) + ", rule '" + ag.front().rule->id + "': " + e.what();
      return result;
    }
    result.cycles = cycle;
  }
  if (!agenda(kb, rules, opts).empty()) result.status = RunStatus::CycleLimit;
  return result;
}

Graph export_graph(const KBState& kb) {
  Graph out = kb.atoms;
  out.prefixes()["run"] = std::string(vocab::kRunNs);
  return out;
}

std::string trace_jsonl(const std::vector<TraceEvent>& trace) {
  std::string out;
  for (const auto& e : trace) {
    nlohmann::json bindings = nlohmann::json::object();
    for (const auto& [name, value] : e.bindings) bindings[name] = to_ntriples(value);
    nlohmann::json line = {{"cycle", e.cycle}, {"rule", e.rule}, {"bindings", bindings}, {"process", e.process.str()}};
    out += line.dump() + "\n";
  }
  return out;
}

}  // namespace bdi
