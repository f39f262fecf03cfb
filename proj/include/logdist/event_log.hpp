#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "logdist/timestamp.hpp"

namespace logdist {

/// Reserved padding label used by the n-gram measures. Real activity
/// labels must not contain it; ingestion rejects logs that do.
inline constexpr std::string_view kPaddingLabel = "\x01";

/// One executed activity instance.
struct Event {
  std::string case_id;
  std::string activity;
  Timestamp start;
  Timestamp end;

  friend bool operator==(const Event&, const Event&) = default;
};

/// Immutable event log: the events in ingestion order plus a per-case view.
/// Within a case, events are ordered by (start, end, activity label); the
/// case list itself is ordered by case id. Duplicate rows are kept.
class EventLog {
public:
  EventLog() = default;

  /// Validates per-event invariants (start <= end, non-empty label, no
  /// reserved padding label) and builds the case index.
  /// Throws ValidationError on violation.
  static EventLog from_events(std::vector<Event> events);

  const std::vector<Event>& events() const { return events_; }
  std::size_t num_events() const { return events_.size(); }
  std::size_t num_cases() const { return case_ids_.size(); }
  bool empty() const { return events_.empty(); }

  /// Case ids in ascending lexicographic order.
  const std::vector<std::string>& case_ids() const { return case_ids_; }

  bool contains_case(std::string_view case_id) const;

  /// Indices into events() for one case, in (start, end, label) order.
  /// Throws LookupError for an unknown case id.
  std::span<const std::size_t> case_events(std::string_view case_id) const;

  /// Earliest start timestamp of the case. Throws LookupError.
  Timestamp case_arrival(std::string_view case_id) const;

  /// max end - min start over the case's events, in seconds (>= 0).
  /// Throws LookupError.
  std::int64_t cycle_time_s(std::string_view case_id) const;

  friend bool operator==(const EventLog& a, const EventLog& b) { return a.events_ == b.events_; }

private:
  std::size_t case_slot(std::string_view case_id) const;

  std::vector<Event> events_;
  std::vector<std::string> case_ids_;                 // sorted
  std::vector<std::vector<std::size_t>> case_index_;  // parallel to case_ids_
  std::unordered_map<std::string, std::size_t> slot_of_;
};

/// Activity-label sequence of one case, timestamps abstracted away.
struct Trace {
  std::string case_id;
  std::vector<std::string> activities;

  friend bool operator==(const Trace&, const Trace&) = default;
};

/// One trace per case, sorted by case id; deterministic.
std::vector<Trace> traces_of(const EventLog& log);

/// Maps CSV columns to the event schema.
struct ColumnMapping {
  std::string case_id = "case_id";
  std::string activity = "activity";
  std::string start = "start_time";
  std::string end = "end_time";
};

struct CsvFormat {
  char delimiter = ',';
  /// strptime-style timestamp pattern; empty selects ISO-8601.
  std::string time_pattern;
};

/// Reads a CSV event log. The header row is required; rows are kept
/// exactly (no dedup). Throws SchemaError for a missing column and
/// RowError (with line number) for malformed rows.
EventLog read_log(const std::filesystem::path& path, const ColumnMapping& mapping = {},
                  const CsvFormat& format = {});

/// Writes a CSV event log in ingestion order with ISO-8601 timestamps;
/// read_log(write_log(log)) reproduces the log field-for-field.
void write_log(const EventLog& log, const std::filesystem::path& path,
               const ColumnMapping& mapping = {}, const CsvFormat& format = {});

}  // namespace logdist
