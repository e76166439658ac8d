#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bdi/mental_types.hpp"
#include "bdi/rdf.hpp"

namespace bdi {

class TemporalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A UTC instant with nanosecond resolution. Parsed from xsd:dateTime text;
/// offsets are folded into UTC and zone-less values are read as UTC.
class TimeInstant {
 public:
  TimeInstant() = default;

  static TimeInstant parse(std::string_view text);
  static std::optional<TimeInstant> try_parse(std::string_view text);
  static TimeInstant from_epoch(std::int64_t seconds, std::int32_t nanos = 0);

  /// YYYY-MM-DDTHH:MM:SS[.fraction]Z with trailing fraction zeros dropped.
  std::string canonical() const;

  std::int64_t epoch_seconds() const { return seconds_; }
  std::int32_t nanos() const { return nanos_; }
  TimeInstant plus_seconds(std::int64_t s) const { return from_epoch(seconds_ + s, nanos_); }
  TimeInstant plus_nanos(std::int64_t ns) const;

  auto operator<=>(const TimeInstant&) const = default;

 private:
  std::int64_t seconds_ = 0;
  std::int32_t nanos_ = 0;
};

/// Half-open [start, end); an absent end means the interval is ongoing.
struct TimeInterval {
  TimeInstant start;
  std::optional<TimeInstant> end;

  bool contains(const TimeInstant& t) const { return start <= t && (!end || t < *end); }
  bool operator==(const TimeInterval&) const = default;
};

/// Symbolic time labels mapped to concrete bounds. Text format, one entry
/// per line:
///
///     Interval_WE_morning = { start = "2025-10-25T08:00:00Z", end = "2025-10-25T12:00:00Z" }
///     T_2025_10_27T10_15  = { start = "2025-10-27T10:15:00Z" }
class TimeMap {
 public:
  static TimeMap parse(std::string_view text);
  static TimeMap load(const std::string& path);

  void set(std::string key, TimeInterval interval) { entries_[std::move(key)] = std::move(interval); }
  /// Looks up the full IRI first, then its local name.
  std::optional<TimeInterval> find(const Iri& iri) const;
  std::size_t size() const { return entries_.size(); }

 private:
  std::map<std::string, TimeInterval> entries_;
};

/// Instant denoted by a node: an xsd:dateTime literal, an individual carrying
/// rdf:value, or a time-map label (its start).
std::optional<TimeInstant> resolve_instant(const Term& node, const Graph& g, const TimeMap* timemap = nullptr);

/// Interval denoted by a node: hasStartTime/hasEndTime bounds, or a time-map label.
std::optional<TimeInterval> resolve_interval(const Term& node, const Graph& g, const TimeMap* timemap = nullptr);

/// Validity interval, or a single anchor instant for atTime-only entities.
struct TemporalExtent {
  TimeInterval interval;
  bool anchor_only = false;

  bool contains(const TimeInstant& t) const { return anchor_only ? t == interval.start : interval.contains(t); }
};

/// Temporal extent of an entity: its validity interval when present, else its
/// atTime anchor. Throws TemporalError when neither exists or resolves.
/// `warnings` receives a note when both exist and disagree.
TemporalExtent temporal_extent(const Term& entity, const Graph& g, const TimeMap* timemap = nullptr,
                             std::vector<std::string>* warnings = nullptr);

bool valid_at(const Term& entity, const TimeInstant& t, const Graph& g, const TimeMap* timemap = nullptr,
              std::vector<std::string>* warnings = nullptr);

/// Mental states held by `agent` that are valid at `t`, sorted.
std::vector<Term> states_valid_at(const Term& agent, const TimeInstant& t, const Graph& g,
                                  const TimeMap* timemap = nullptr);

struct HistoryEntry {
  std::optional<TimeInstant> at;
  Iri process;
  EffectKind effect;
  bool operator==(const HistoryEntry&) const = default;
};

/// Processes that affected `entity` or its chain of modified successors,
/// ordered by process time (untimed last) then IRI.
std::vector<HistoryEntry> history(const Term& entity, const Graph& g, const TimeMap* timemap = nullptr);

}  // namespace bdi
