#include "logdist/event_log.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "logdist/errors.hpp"

namespace logdist {

namespace {

bool event_order(const Event& a, const Event& b) {
  if (a.start.epoch_s != b.start.epoch_s) return a.start.epoch_s < b.start.epoch_s;
  if (a.end.epoch_s != b.end.epoch_s) return a.end.epoch_s < b.end.epoch_s;
  return a.activity < b.activity;
}

// RFC-4180-ish field splitting with double-quote escaping.
std::vector<std::string> split_csv_row(const std::string& line, char delim) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"' && cur.empty()) {
      quoted = true;
    } else if (c == delim) {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

std::string csv_escape(const std::string& s, char delim) {
  bool needs = s.find_first_of("\"\r\n") != std::string::npos || s.find(delim) != std::string::npos;
  if (!needs) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

EventLog EventLog::from_events(std::vector<Event> events) {
  EventLog log;
  log.events_ = std::move(events);
  for (std::size_t i = 0; i < log.events_.size(); ++i) {
    const Event& e = log.events_[i];
    if (e.activity.empty())
      throw ValidationError("event " + std::to_string(i) + ": empty activity label");
    if (e.activity.find(kPaddingLabel) != std::string::npos)
      throw ValidationError("event " + std::to_string(i) +
                            ": activity label contains the reserved padding token");
    if (e.end.epoch_s < e.start.epoch_s)
      throw ValidationError("event " + std::to_string(i) + " (case " + e.case_id +
                            "): end precedes start");
    auto [it, inserted] = log.slot_of_.try_emplace(e.case_id, log.case_ids_.size());
    if (inserted) {
      log.case_ids_.push_back(e.case_id);
      log.case_index_.emplace_back();
    }
    log.case_index_[it->second].push_back(i);
  }
  // Sort cases by id, keeping the index parallel.
  std::vector<std::size_t> order(log.case_ids_.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return log.case_ids_[a] < log.case_ids_[b]; });
  std::vector<std::string> ids;
  std::vector<std::vector<std::size_t>> index;
  ids.reserve(order.size());
  index.reserve(order.size());
  for (std::size_t slot : order) {
    ids.push_back(std::move(log.case_ids_[slot]));
    index.push_back(std::move(log.case_index_[slot]));
  }
  log.case_ids_ = std::move(ids);
  log.case_index_ = std::move(index);
  for (std::size_t i = 0; i < log.case_ids_.size(); ++i) log.slot_of_[log.case_ids_[i]] = i;
  for (auto& idx : log.case_index_) {
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return event_order(log.events_[a], log.events_[b]);
    });
  }
  return log;
}

std::size_t EventLog::case_slot(std::string_view case_id) const {
  auto it = slot_of_.find(std::string(case_id));
  if (it == slot_of_.end()) throw LookupError("unknown case id: " + std::string(case_id));
  return it->second;
}

bool EventLog::contains_case(std::string_view case_id) const {
  return slot_of_.count(std::string(case_id)) != 0;
}

std::span<const std::size_t> EventLog::case_events(std::string_view case_id) const {
  return case_index_[case_slot(case_id)];
}

Timestamp EventLog::case_arrival(std::string_view case_id) const {
  const auto& idx = case_index_[case_slot(case_id)];
  Timestamp best = events_[idx.front()].start;
  for (std::size_t i : idx) {
    if (events_[i].start.epoch_s < best.epoch_s) best = events_[i].start;
  }
  return best;
}

std::int64_t EventLog::cycle_time_s(std::string_view case_id) const {
  const auto& idx = case_index_[case_slot(case_id)];
  std::int64_t lo = events_[idx.front()].start.epoch_s;
  std::int64_t hi = events_[idx.front()].end.epoch_s;
  for (std::size_t i : idx) {
    lo = std::min(lo, events_[i].start.epoch_s);
    hi = std::max(hi, events_[i].end.epoch_s);
  }
  return hi - lo;
}

std::vector<Trace> traces_of(const EventLog& log) {
  std::vector<Trace> traces;
  traces.reserve(log.num_cases());
  for (const std::string& id : log.case_ids()) {
    Trace t;
    t.case_id = id;
    for (std::size_t i : log.case_events(id)) t.activities.push_back(log.events()[i].activity);
    traces.push_back(std::move(t));
  }
  return traces;
}

EventLog read_log(const std::filesystem::path& path, const ColumnMapping& mapping,
                  const CsvFormat& format) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open file: " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw SchemaError("empty file (header row required): " + path.string());
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::vector<std::string> header = split_csv_row(line, format.delimiter);
  auto column = [&](const std::string& name) -> std::size_t {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end())
      throw SchemaError("missing column '" + name + "' in " + path.string());
    return std::size_t(it - header.begin());
  };
  const std::size_t ci = column(mapping.case_id);
  const std::size_t ai = column(mapping.activity);
  const std::size_t si = column(mapping.start);
  const std::size_t ei = column(mapping.end);

  std::vector<Event> events;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields = split_csv_row(line, format.delimiter);
    if (fields.size() < header.size())
      throw RowError(lineno, "expected " + std::to_string(header.size()) + " fields, got " +
                                 std::to_string(fields.size()));
    auto parse_ts = [&](const std::string& text, const char* what) {
      auto ts = parse_timestamp(text, format.time_pattern);
      if (!ts) throw RowError(lineno, std::string("unparseable ") + what + " timestamp: '" + text + "'");
      return *ts;
    };
    Event e;
    e.case_id = fields[ci];
    e.activity = fields[ai];
    e.start = parse_ts(fields[si], "start");
    e.end = parse_ts(fields[ei], "end");
    if (e.activity.empty()) throw RowError(lineno, "empty activity label");
    if (e.activity.find(kPaddingLabel) != std::string::npos)
      throw RowError(lineno, "activity label contains the reserved padding token");
    if (e.end.epoch_s < e.start.epoch_s)
      throw RowError(lineno, "end timestamp precedes start (case " + e.case_id + ")");
    events.push_back(std::move(e));
  }
  return EventLog::from_events(std::move(events));
}

void write_log(const EventLog& log, const std::filesystem::path& path,
               const ColumnMapping& mapping, const CsvFormat& format) {
  std::ofstream out(path);
  if (!out) throw SchemaError("cannot open file for writing: " + path.string());
  const char d = format.delimiter;
  out << csv_escape(mapping.case_id, d) << d << csv_escape(mapping.activity, d) << d
      << csv_escape(mapping.start, d) << d << csv_escape(mapping.end, d) << '\n';
  for (const Event& e : log.events()) {
    out << csv_escape(e.case_id, d) << d << csv_escape(e.activity, d) << d
        << format_iso8601(e.start) << d << format_iso8601(e.end) << '\n';
  }
  if (!out) throw SchemaError("write failed: " + path.string());
}

}  // namespace logdist
