#include "bdi/temporal.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "bdi/vocab.hpp"
#include "toml.hpp"

namespace bdi {

namespace {

using std::chrono::day;
using std::chrono::month;
using std::chrono::sys_days;
using std::chrono::year;
using std::chrono::year_month_day;

constexpr std::int64_t kNanosPerSecond = 1'000'000'000;

class Cursor {
 public:
  explicit Cursor(std::string_view s) : s_(s) {}
  bool done() const { return i_ >= s_.size(); }
  char peek() const { return done() ? '\0' : s_[i_]; }
  bool eat(char c) {
    if (peek() != c) return false;
    ++i_;
    return true;
  }
  std::optional<int> digits(std::size_t n) {
    if (i_ + n > s_.size()) return std::nullopt;
    int v = 0;
    for (std::size_t k = 0; k < n; ++k) {
      const char c = s_[i_ + k];
      if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
      v = v * 10 + (c - '0');
    }
    i_ += n;
    return v;
  }

 private:
  std::string_view s_;
  std::size_t i_ = 0;
};

}  // namespace

TimeInstant TimeInstant::from_epoch(std::int64_t seconds, std::int32_t nanos) {
  TimeInstant t;
  t.seconds_ = seconds + nanos / kNanosPerSecond;
  t.nanos_ = static_cast<std::int32_t>(nanos % kNanosPerSecond);
  if (t.nanos_ < 0) {
    t.nanos_ += kNanosPerSecond;
    --t.seconds_;
  }
  return t;
}

TimeInstant TimeInstant::plus_nanos(std::int64_t ns) const {
  const std::int64_t total = static_cast<std::int64_t>(nanos_) + ns;
  std::int64_t secs = total / kNanosPerSecond;
  std::int64_t rem = total % kNanosPerSecond;
  if (rem < 0) {
    rem += kNanosPerSecond;
    --secs;
  }
  return from_epoch(seconds_ + secs, static_cast<std::int32_t>(rem));
}

std::optional<TimeInstant> TimeInstant::try_parse(std::string_view text) {
  Cursor c(text);
  auto y = c.digits(4);
  if (!y || !c.eat('-')) return std::nullopt;
  auto mo = c.digits(2);
  if (!mo || !c.eat('-')) return std::nullopt;
  auto d = c.digits(2);
  if (!d || !c.eat('T')) return std::nullopt;
  auto h = c.digits(2);
  if (!h || !c.eat(':')) return std::nullopt;
  auto mi = c.digits(2);
  if (!mi || !c.eat(':')) return std::nullopt;
  auto s = c.digits(2);
  if (!s) return std::nullopt;

  std::int64_t nanos = 0;
  if (c.eat('.')) {
    int n = 0;
    while (std::isdigit(static_cast<unsigned char>(c.peek()))) {
      const int digit = *c.digits(1);
      if (n < 9) nanos = nanos * 10 + digit;
      else if (digit != 0) return std::nullopt;  // beyond nanosecond resolution
      ++n;
    }
    if (n == 0) return std::nullopt;
    for (; n < 9; ++n) nanos *= 10;
  }

  std::int64_t offset_minutes = 0;
  if (c.eat('Z')) {
  } else if (c.peek() == '+' || c.peek() == '-') {
    const int sign = c.peek() == '-' ? -1 : 1;
    c.eat(c.peek());
    auto oh = c.digits(2);
    if (!oh || !c.eat(':')) return std::nullopt;
    auto om = c.digits(2);
    if (!om || *oh > 14 || *om > 59) return std::nullopt;
    offset_minutes = sign * (*oh * 60 + *om);
  }
  if (!c.done()) return std::nullopt;
  if (*y < 1 || *h > 23 || *mi > 59 || *s > 59) return std::nullopt;

  const year_month_day ymd{year{*y}, month{static_cast<unsigned>(*mo)}, day{static_cast<unsigned>(*d)}};
  if (!ymd.ok()) return std::nullopt;
  const std::int64_t days = sys_days{ymd}.time_since_epoch().count();
  const std::int64_t secs = days * 86400 + *h * 3600 + *mi * 60 + *s - offset_minutes * 60;
  return from_epoch(secs, static_cast<std::int32_t>(nanos));
}

TimeInstant TimeInstant::parse(std::string_view text) {
  if (auto t = try_parse(text)) return *t;
  throw TemporalError("not an xsd:dateTime: '" + std::string(text) + "'");
}

std::string TimeInstant::canonical() const {
  std::int64_t days = seconds_ / 86400;
  std::int64_t rem = seconds_ % 86400;
  if (rem < 0) {
    rem += 86400;
    --days;
  }
  const year_month_day ymd{sys_days{std::chrono::days{days}}};
  char buf[64];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02d", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()), static_cast<int>(rem / 3600),
                static_cast<int>(rem / 60 % 60), static_cast<int>(rem % 60));
  std::string out = buf;
  if (nanos_ != 0) {
    std::snprintf(buf, sizeof buf, ".%09d", nanos_);
    std::string frac = buf;
    while (frac.back() == '0') frac.pop_back();
    out += frac;
  }
  return out + "Z";
}

// ---------------------------------------------------------------------------

TimeMap TimeMap::parse(std::string_view text) {
  toml::table doc;
  try {
    doc = toml::parse(text);
  } catch (const toml::parse_error& e) {
    throw TemporalError("timemap line " + std::to_string(e.source().begin.line) + ": " + std::string(e.description()));
  }

  TimeMap map;
  for (const auto& [key, node] : doc) {
    const std::string name(key.str());
    auto fail = [&](const std::string& msg) { return TemporalError("timemap entry '" + name + "': " + msg); };
    const auto* entry = node.as_table();
    if (!entry) throw fail("expected a table with start and end");

    auto instant = [&](const char* field) -> std::optional<TimeInstant> {
      const auto* value = entry->get(field);
      if (!value) return std::nullopt;
      std::string lexical;
      if (const auto* str = value->as_string()) {
        lexical = str->get();
      } else if (const auto* native = value->as_date_time()) {
        std::ostringstream ss;
        ss << *native;
        lexical = ss.str();
      } else {
        throw fail(std::string(field) + " must be an xsd:dateTime string");
      }
      auto t = TimeInstant::try_parse(lexical);
      if (!t) throw fail("'" + lexical + "' is not an xsd:dateTime");
      return t;
    };
    for (const auto& [field, value] : *entry)
      if (field.str() != "start" && field.str() != "end") throw fail("unknown field '" + std::string(field.str()) + "'");

    const auto start = instant("start");
    const auto end = instant("end");
    if (!start) throw fail("no start");
    if (end && *end < *start) throw fail("ends before it starts");
    map.set(name, TimeInterval{*start, end});
  }
  return map;
}

TimeMap TimeMap::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw TemporalError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

std::optional<TimeInterval> TimeMap::find(const Iri& iri) const {
  auto it = entries_.find(iri.str());
  if (it == entries_.end()) it = entries_.find(std::string(iri.local_name()));
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

// ---------------------------------------------------------------------------

std::optional<TimeInstant> resolve_instant(const Term& node, const Graph& g, const TimeMap* timemap) {
  if (const auto* lit = as_literal(node)) return TimeInstant::try_parse(lit->lexical());
  for (const auto& v : g.objects(node, vocab::value())) {
    if (const auto* lit = as_literal(v)) {
      if (auto t = TimeInstant::try_parse(lit->lexical())) return t;
    }
  }
  if (timemap) {
    if (const auto* iri = as_iri(node)) {
      if (auto entry = timemap->find(*iri)) return entry->start;
    }
  }
  return std::nullopt;
}

std::optional<TimeInterval> resolve_interval(const Term& node, const Graph& g, const TimeMap* timemap) {
  const auto starts = g.objects(node, vocab::bdi("hasStartTime"));
  if (!starts.empty()) {
    auto start = resolve_instant(starts.front(), g, timemap);
    if (!start) return std::nullopt;
    TimeInterval interval{*start, std::nullopt};
    const auto ends = g.objects(node, vocab::bdi("hasEndTime"));
    if (!ends.empty()) {
      interval.end = resolve_instant(ends.front(), g, timemap);
      if (!interval.end) return std::nullopt;
    }
    return interval;
  }
  if (timemap) {
    if (const auto* iri = as_iri(node)) return timemap->find(*iri);
  }
  return std::nullopt;
}

TemporalExtent temporal_extent(const Term& entity, const Graph& g, const TimeMap* timemap,
                               std::vector<std::string>* warnings) {
  const auto validity = g.objects(entity, vocab::bdi("hasValidity"));
  const auto anchors = g.objects(entity, vocab::bdi("atTime"));
  if (validity.empty() && anchors.empty())
    throw TemporalError(to_ntriples(entity) + " has neither hasValidity nor atTime");

  std::optional<TimeInstant> anchor;
  if (!anchors.empty()) {
    anchor = resolve_instant(anchors.front(), g, timemap);
    // An atTime pointing at an interval anchors to its start.
    if (!anchor) {
      if (auto iv = resolve_interval(anchors.front(), g, timemap)) anchor = iv->start;
    }
  }

  if (!validity.empty()) {
    auto interval = resolve_interval(validity.front(), g, timemap);
    if (!interval) throw TemporalError("validity of " + to_ntriples(entity) + " has no resolvable bounds");
    if (anchor && warnings && !interval->contains(*anchor))
      warnings->push_back(to_ntriples(entity) + ": atTime " + anchor->canonical() +
                          " lies outside its validity interval; validity is used");
    return TemporalExtent{*interval, false};
  }
  if (!anchor) throw TemporalError("atTime of " + to_ntriples(entity) + " does not resolve to an instant");
  return TemporalExtent{TimeInterval{*anchor, *anchor}, true};
}

bool valid_at(const Term& entity, const TimeInstant& t, const Graph& g, const TimeMap* timemap,
              std::vector<std::string>* warnings) {
  return temporal_extent(entity, g, timemap, warnings).contains(t);
}

namespace {

bool is_mental_state(const Term& node, const Graph& g) {
  static const std::vector<Iri> classes = {vocab::bdi("MentalState"), vocab::bdi("Belief"), vocab::bdi("Desire"),
                                           vocab::bdi("Intention")};
  return std::any_of(classes.begin(), classes.end(), [&](const Iri& c) { return g.has(node, vocab::type(), c); });
}

}  // namespace

std::vector<Term> states_valid_at(const Term& agent, const TimeInstant& t, const Graph& g, const TimeMap* timemap) {
  std::set<Term> held;
  for (const char* p : {"hasMentalState", "hasBelief", "hasDesire", "hasIntention"})
    for (auto& s : g.objects(agent, vocab::bdi(p))) held.insert(std::move(s));
  for (const char* p : {"isMentalStateOf", "isBeliefOf", "isDesireOf", "isIntentionOf"})
    for (auto& s : g.subjects(vocab::bdi(p), agent)) held.insert(std::move(s));

  std::vector<Term> out;
  for (const auto& s : held) {
    if (!is_mental_state(s, g)) continue;
    try {
      if (valid_at(s, t, g, timemap)) out.push_back(s);
    } catch (const TemporalError&) {
      // States without temporal information are never reported as valid.
    }
  }
  return out;
}

std::vector<HistoryEntry> history(const Term& entity, const Graph& g, const TimeMap* timemap) {
  const Iri gen = predicate_iri(EffectKind::Generates);
  const Iri mod = predicate_iri(EffectKind::Modifies);
  const Iri sup = predicate_iri(EffectKind::Suppresses);

  // The entity plus every state that replaced it through a modification.
  std::set<Term> chain{entity};
  std::vector<Term> frontier{entity};
  while (!frontier.empty()) {
    Term cur = std::move(frontier.back());
    frontier.pop_back();
    for (const auto& p : g.subjects(sup, cur)) {
      for (auto& next : g.objects(p, mod)) {
        if (chain.insert(next).second) frontier.push_back(next);
      }
    }
  }

  std::map<Term, EffectKind> effects;
  auto note = [&](const Term& process, EffectKind k) {
    auto [it, inserted] = effects.emplace(process, k);
    // A process that both retires and replaces a state is one modification.
    if (!inserted && (k == EffectKind::Modifies || (k == EffectKind::Generates && it->second == EffectKind::Suppresses)))
      it->second = k;
  };
  for (const auto& state : chain) {
    for (const auto& p : g.subjects(sup, state)) note(p, EffectKind::Suppresses);
    for (const auto& p : g.subjects(gen, state)) note(p, EffectKind::Generates);
    for (const auto& p : g.subjects(mod, state)) note(p, EffectKind::Modifies);
  }

  std::vector<HistoryEntry> out;
  for (const auto& [process, kind] : effects) {
    const auto* iri = as_iri(process);
    if (!iri) continue;
    std::optional<TimeInstant> at;
    const auto anchors = g.objects(process, vocab::bdi("atTime"));
    if (!anchors.empty()) at = resolve_instant(anchors.front(), g, timemap);
    out.push_back(HistoryEntry{at, *iri, kind});
  }
  std::sort(out.begin(), out.end(), [](const HistoryEntry& a, const HistoryEntry& b) {
    if (a.at.has_value() != b.at.has_value()) return a.at.has_value();
    if (a.at && *a.at != *b.at) return *a.at < *b.at;
    return a.process < b.process;
  });
  return out;
}

}  // namespace bdi
