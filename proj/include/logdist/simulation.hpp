#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "logdist/event_log.hpp"

namespace logdist {

/// Parametric duration model; all parameters are seconds. Samples are
/// clamped at 0 and rounded to whole seconds.
struct DurationDistribution {
  enum class Kind { Fixed, Uniform, Exponential, Normal };
  Kind kind = Kind::Fixed;
  double a = 0.0;  // fixed: value; uniform: low; exponential: mean; normal: mean
  double b = 0.0;  // uniform: high; normal: stddev

  friend bool operator==(const DurationDistribution&, const DurationDistribution&) = default;
};

/// One working window in local civil time. `end_s` may be 86400 (midnight).
struct CalendarWindow {
  int weekday = 0;  // Monday = 0 .. Sunday = 6
  int start_s = 0;  // seconds from local midnight
  int end_s = 86400;

  friend bool operator==(const CalendarWindow&, const CalendarWindow&) = default;
};

struct ResourcePool {
  std::string id;
  int size = 1;
  std::vector<CalendarWindow> windows;  // empty means 24/7

  friend bool operator==(const ResourcePool&, const ResourcePool&) = default;
};

struct Activity {
  std::string label;
  std::string pool;
  DurationDistribution duration;
  /// Optional extraneous delay elapsing in wall-clock time before the
  /// resource is requested.
  std::optional<DurationDistribution> timer;

  friend bool operator==(const Activity&, const Activity&) = default;
};

enum class NodeType { Start, End, Activity, XorSplit, AndSplit, AndJoin };

struct FlowNode {
  std::string id;
  NodeType type = NodeType::Activity;
  std::string activity;            // label, for Activity nodes
  std::vector<std::string> next;   // successors (1 for Start/Activity/AndJoin)
  std::vector<double> probabilities;  // XorSplit only, parallel to next

  friend bool operator==(const FlowNode&, const FlowNode&) = default;
};

struct ArrivalProcess {
  DurationDistribution inter_arrival;
  std::vector<CalendarWindow> windows;  // arrival calendar; empty means 24/7
  std::optional<Timestamp> first_arrival;

  friend bool operator==(const ArrivalProcess&, const ArrivalProcess&) = default;
};

struct BpsModel {
  std::string name;
  ArrivalProcess arrival;
  std::vector<ResourcePool> pools;
  std::vector<Activity> activities;
  std::vector<FlowNode> nodes;
  std::string start_node;

  friend bool operator==(const BpsModel&, const BpsModel&) = default;
};

/// Structural validation: XOR probabilities sum to 1 +- 1e-9, AND splits
/// have matching joins, the graph is connected from the start node, labels
/// are unique, pool references resolve, calendars are well-formed.
/// Throws ValidationError.
void validate_model(const BpsModel& model);

struct SimulationConfig {
  int num_cases = 1;
  std::uint64_t seed = 0;
  /// First-arrival instant; falls back to the model's `first_arrival`.
  std::optional<Timestamp> start;
  /// Seed for the arrival stream only. Defaults to `seed`; the evaluation
  /// protocol shares it across runs so every run sees the same arrivals.
  std::optional<std::uint64_t> arrival_seed;
};

/// Runs the seeded discrete-event simulation: FIFO queueing per pool,
/// work only inside calendar windows (working-time durations, paused at
/// window boundaries), timer delays in wall-clock time before the
/// resource request. Identical (model, config) yields an identical log.
/// Throws SimulationError when a case exceeds the per-case step budget.
EventLog simulate(const BpsModel& model, const SimulationConfig& config);

/// JSON (de)serialization; the schema is documented in docs/model-schema.md.
BpsModel parse_model(const std::string& json_text);
std::string model_to_json_text(const BpsModel& model);
BpsModel load_model(const std::filesystem::path& path);
void save_model(const BpsModel& model, const std::filesystem::path& path);

/// Weekly working-time arithmetic shared by the simulator and tests.
class WeeklyCalendar {
public:
  /// `offset_s` is the UTC offset in which the windows are interpreted.
  WeeklyCalendar(const std::vector<CalendarWindow>& windows, std::int32_t offset_s);

  /// Earliest working instant >= t (epoch seconds).
  std::int64_t next_working(std::int64_t t) const;
  /// Instant at which `duration_s` of working time has elapsed from t.
  std::int64_t add_working(std::int64_t t, std::int64_t duration_s) const;
  /// Working seconds inside [t0, t1).
  std::int64_t working_between(std::int64_t t0, std::int64_t t1) const;
  bool is_working(std::int64_t t) const;

private:
  std::vector<std::pair<std::int64_t, std::int64_t>> intervals_;  // within [0, week)
  std::int32_t offset_s_;
};

}  // namespace logdist
