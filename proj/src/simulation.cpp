#include "logdist/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <queue>
#include <unordered_map>
#include <unordered_set>

#include "logdist/errors.hpp"
#include "logdist/rng.hpp"

namespace logdist {

namespace {

constexpr std::int64_t kWeek = 7 * 86400;
constexpr std::int64_t kEpochWeekdayMon0 = 3;  // 1970-01-01 was a Thursday
constexpr int kCaseStepBudget = 10000;         // activity executions per case

// Counter-based stream for one draw site. Sites are keyed structurally by
// (seed, case, node, visit) so a draw never depends on how concurrent
// branches or other cases interleave in global time.
class DrawStream {
public:
  DrawStream(std::uint64_t seed, std::uint64_t case_idx, std::uint64_t node, std::uint64_t visit)
      : base_(mix_seed(mix_seed(mix_seed(seed, case_idx), node), visit)) {}

  double uniform01() { return double(splitmix64(base_ + counter_++) >> 11) * 0x1.0p-53; }

private:
  std::uint64_t base_;
  std::uint64_t counter_ = 0;
};

std::int64_t sample_seconds(const DurationDistribution& d, DrawStream& s) {
  double v = 0.0;
  switch (d.kind) {
    case DurationDistribution::Kind::Fixed: v = d.a; break;
    case DurationDistribution::Kind::Uniform: v = d.a + (d.b - d.a) * s.uniform01(); break;
    case DurationDistribution::Kind::Exponential: v = -d.a * std::log1p(-s.uniform01()); break;
    case DurationDistribution::Kind::Normal: {
      double u1 = s.uniform01();
      double u2 = s.uniform01();
      double r = std::sqrt(-2.0 * std::log1p(-u1));
      v = d.a + d.b * r * std::cos(2.0 * std::numbers::pi * u2);
      break;
    }
  }
  if (v < 0.0) v = 0.0;
  return std::llround(v);
}

void validate_distribution(const DurationDistribution& d, const std::string& where) {
  auto bad = [&](const char* what) { throw ValidationError(where + ": " + what); };
  switch (d.kind) {
    case DurationDistribution::Kind::Fixed:
      if (d.a < 0.0) bad("fixed value must be >= 0");
      break;
    case DurationDistribution::Kind::Uniform:
      if (d.a < 0.0 || d.b < d.a) bad("uniform bounds must satisfy 0 <= low <= high");
      break;
    case DurationDistribution::Kind::Exponential:
      if (d.a <= 0.0) bad("exponential mean must be > 0");
      break;
    case DurationDistribution::Kind::Normal:
      if (d.b < 0.0) bad("normal stddev must be >= 0");
      break;
  }
}

void validate_windows(const std::vector<CalendarWindow>& windows, const std::string& where) {
  std::vector<std::vector<std::pair<int, int>>> per_day(7);
  for (const CalendarWindow& w : windows) {
    if (w.weekday < 0 || w.weekday > 6) throw ValidationError(where + ": weekday out of range");
    if (w.start_s < 0 || w.end_s > 86400 || w.start_s >= w.end_s)
      throw ValidationError(where + ": window must satisfy 0 <= start < end <= 86400");
    per_day[std::size_t(w.weekday)].emplace_back(w.start_s, w.end_s);
  }
  for (auto& day : per_day) {
    std::sort(day.begin(), day.end());
    for (std::size_t i = 1; i < day.size(); ++i)
      if (day[i].first < day[i - 1].second)
        throw ValidationError(where + ": overlapping windows on the same weekday");
  }
}

struct CompiledFlow {
  std::vector<const FlowNode*> nodes;
  std::unordered_map<std::string, int> index_of;
  std::vector<std::vector<int>> next;
  std::vector<int> in_degree;
  std::vector<int> activity_of;  // index into model.activities, -1 otherwise
  int start = -1;
};

CompiledFlow compile_flow(const BpsModel& model) {
  CompiledFlow flow;
  for (const FlowNode& n : model.nodes) {
    if (flow.index_of.count(n.id)) throw ValidationError("duplicate node id: " + n.id);
    flow.index_of[n.id] = int(flow.nodes.size());
    flow.nodes.push_back(&n);
  }
  std::unordered_map<std::string, int> activity_index;
  for (std::size_t i = 0; i < model.activities.size(); ++i)
    activity_index[model.activities[i].label] = int(i);
  flow.next.resize(flow.nodes.size());
  flow.in_degree.assign(flow.nodes.size(), 0);
  flow.activity_of.assign(flow.nodes.size(), -1);
  for (std::size_t i = 0; i < flow.nodes.size(); ++i) {
    const FlowNode& n = *flow.nodes[i];
    for (const std::string& succ : n.next) {
      auto it = flow.index_of.find(succ);
      if (it == flow.index_of.end())
        throw ValidationError("node " + n.id + " references unknown successor " + succ);
      flow.next[i].push_back(it->second);
      ++flow.in_degree[std::size_t(it->second)];
    }
    if (n.type == NodeType::Activity) {
      auto it = activity_index.find(n.activity);
      if (it == activity_index.end())
        throw ValidationError("node " + n.id + " references unknown activity " + n.activity);
      flow.activity_of[i] = it->second;
    }
  }
  auto start_it = flow.index_of.find(model.start_node);
  if (start_it == flow.index_of.end())
    throw ValidationError("start node not found: " + model.start_node);
  flow.start = start_it->second;
  return flow;
}

// From an AND-split branch, the join at which the branch's token merges:
// the first node where the split/join nesting depth drops below zero.
int find_matching_join(const CompiledFlow& flow, int branch, std::string_view split_id) {
  std::unordered_set<long long> seen;
  std::vector<std::pair<int, int>> stack{{branch, 0}};
  int join = -1;
  while (!stack.empty()) {
    auto [node, depth] = stack.back();
    stack.pop_back();
    if (!seen.insert((long long)node * 1000 + depth).second) continue;
    const FlowNode& n = *flow.nodes[std::size_t(node)];
    if (n.type == NodeType::AndJoin) {
      if (depth == 0) {
        if (join != -1 && join != node)
          throw ValidationError("branches of AND split " + std::string(split_id) +
                                " merge at different joins");
        join = node;
        continue;
      }
      --depth;
    }
    if (n.type == NodeType::End)
      throw ValidationError("a branch of AND split " + std::string(split_id) +
                            " reaches an end event before its join");
    int d = depth + (n.type == NodeType::AndSplit ? 1 : 0);
    for (int succ : flow.next[std::size_t(node)]) stack.emplace_back(succ, d);
  }
  if (join == -1)
    throw ValidationError("AND split " + std::string(split_id) + " has no matching join");
  return join;
}

}  // namespace

WeeklyCalendar::WeeklyCalendar(const std::vector<CalendarWindow>& windows, std::int32_t offset_s)
    : offset_s_(offset_s) {
  if (windows.empty()) {
    intervals_.emplace_back(0, kWeek);
    return;
  }
  for (const CalendarWindow& w : windows)
    intervals_.emplace_back(std::int64_t(w.weekday) * 86400 + w.start_s,
                            std::int64_t(w.weekday) * 86400 + w.end_s);
  std::sort(intervals_.begin(), intervals_.end());
}

namespace {
std::int64_t week_pos(std::int64_t t, std::int32_t offset_s) {
  return floor_mod(t + offset_s + kEpochWeekdayMon0 * 86400, kWeek);
}
}  // namespace

bool WeeklyCalendar::is_working(std::int64_t t) const {
  std::int64_t wp = week_pos(t, offset_s_);
  for (const auto& [s, e] : intervals_)
    if (wp >= s && wp < e) return true;
  return false;
}

std::int64_t WeeklyCalendar::next_working(std::int64_t t) const {
  std::int64_t wp = week_pos(t, offset_s_);
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  for (const auto& [s, e] : intervals_) {
    if (wp >= s && wp < e) return t;
    std::int64_t delta = s >= wp ? s - wp : s + kWeek - wp;
    best = std::min(best, delta);
  }
  return t + best;
}

std::int64_t WeeklyCalendar::add_working(std::int64_t t, std::int64_t duration_s) const {
  while (duration_s > 0) {
    t = next_working(t);
    std::int64_t wp = week_pos(t, offset_s_);
    std::int64_t room = 0;
    for (const auto& [s, e] : intervals_) {
      if (wp >= s && wp < e) {
        room = e - wp;
        break;
      }
    }
    std::int64_t take = std::min(room, duration_s);
    t += take;
    duration_s -= take;
  }
  return t;
}

std::int64_t WeeklyCalendar::working_between(std::int64_t t0, std::int64_t t1) const {
  std::int64_t total = 0;
  std::int64_t t = t0;
  while (t < t1) {
    t = next_working(t);
    if (t >= t1) break;
    std::int64_t wp = week_pos(t, offset_s_);
    std::int64_t room = 0;
    for (const auto& [s, e] : intervals_) {
      if (wp >= s && wp < e) {
        room = e - wp;
        break;
      }
    }
    std::int64_t take = std::min(room, t1 - t);
    total += take;
    t += take;
  }
  return total;
}

void validate_model(const BpsModel& model) {
  if (model.pools.empty()) throw ValidationError("model has no resource pools");
  if (model.activities.empty()) throw ValidationError("model has no activities");
  std::unordered_set<std::string> pool_ids;
  for (const ResourcePool& p : model.pools) {
    if (!pool_ids.insert(p.id).second) throw ValidationError("duplicate pool id: " + p.id);
    if (p.size < 1) throw ValidationError("pool " + p.id + " must have size >= 1");
    validate_windows(p.windows, "pool " + p.id);
    if (!p.windows.empty()) {
      WeeklyCalendar cal(p.windows, 0);
      if (cal.working_between(0, kWeek) == 0)
        throw ValidationError("pool " + p.id + " has no working time");
    }
  }
  std::unordered_set<std::string> labels;
  for (const Activity& a : model.activities) {
    if (a.label.empty()) throw ValidationError("activity with empty label");
    if (!labels.insert(a.label).second) throw ValidationError("duplicate activity label: " + a.label);
    if (!pool_ids.count(a.pool))
      throw ValidationError("activity " + a.label + " references unknown pool " + a.pool);
    validate_distribution(a.duration, "activity " + a.label + " duration");
    if (a.timer) validate_distribution(*a.timer, "activity " + a.label + " timer");
  }
  validate_distribution(model.arrival.inter_arrival, "inter-arrival");
  validate_windows(model.arrival.windows, "arrival calendar");

  CompiledFlow flow = compile_flow(model);
  int end_count = 0;
  int start_count = 0;
  for (std::size_t i = 0; i < flow.nodes.size(); ++i) {
    const FlowNode& n = *flow.nodes[i];
    switch (n.type) {
      case NodeType::Start:
        ++start_count;
        if (n.next.size() != 1) throw ValidationError("start node must have exactly one successor");
        break;
      case NodeType::End:
        ++end_count;
        if (!n.next.empty()) throw ValidationError("end node " + n.id + " must have no successors");
        break;
      case NodeType::Activity:
      case NodeType::AndJoin:
        if (n.next.size() != 1)
          throw ValidationError("node " + n.id + " must have exactly one successor");
        break;
      case NodeType::XorSplit: {
        if (n.next.size() < 2) throw ValidationError("XOR split " + n.id + " needs >= 2 branches");
        if (n.probabilities.size() != n.next.size())
          throw ValidationError("XOR split " + n.id + " probabilities do not match branches");
        double sum = 0.0;
        for (double p : n.probabilities) {
          if (p < 0.0) throw ValidationError("XOR split " + n.id + " has a negative probability");
          sum += p;
        }
        if (std::abs(sum - 1.0) > 1e-9)
          throw ValidationError("XOR split " + n.id + " probabilities sum to " +
                                std::to_string(sum) + ", expected 1");
        break;
      }
      case NodeType::AndSplit:
        if (n.next.size() < 2) throw ValidationError("AND split " + n.id + " needs >= 2 branches");
        break;
    }
  }
  if (start_count != 1) throw ValidationError("model must have exactly one start node");
  if (end_count < 1) throw ValidationError("model must have at least one end node");
  if (flow.nodes[std::size_t(flow.start)]->type != NodeType::Start)
    throw ValidationError("start_node must reference a start node");

  // Connectivity from start.
  std::vector<char> reached(flow.nodes.size(), 0);
  std::vector<int> stack{flow.start};
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    if (reached[std::size_t(v)]) continue;
    reached[std::size_t(v)] = 1;
    for (int s : flow.next[std::size_t(v)]) stack.push_back(s);
  }
  for (std::size_t i = 0; i < flow.nodes.size(); ++i)
    if (!reached[i]) throw ValidationError("node " + flow.nodes[i]->id + " unreachable from start");

  // Every AND split's branches must converge on one join with matching arity.
  for (std::size_t i = 0; i < flow.nodes.size(); ++i) {
    const FlowNode& n = *flow.nodes[i];
    if (n.type != NodeType::AndSplit) continue;
    int join = -1;
    for (int branch : flow.next[i]) {
      int j = find_matching_join(flow, branch, n.id);
      if (join == -1) join = j;
      if (j != join)
        throw ValidationError("branches of AND split " + n.id + " merge at different joins");
    }
    if (flow.in_degree[std::size_t(join)] != int(flow.next[i].size()))
      throw ValidationError("AND join " + flow.nodes[std::size_t(join)]->id +
                            " arity does not match split " + n.id);
  }
}

EventLog simulate(const BpsModel& model, const SimulationConfig& config) {
  validate_model(model);
  if (config.num_cases < 1) throw ParameterError("num_cases must be >= 1");
  std::optional<Timestamp> start = config.start ? config.start : model.arrival.first_arrival;
  if (!start)
    throw ParameterError("no start instant: set SimulationConfig.start or the model's first_arrival");
  const std::int32_t offset = start->offset_s;
  const std::uint64_t arrival_seed = config.arrival_seed.value_or(config.seed);

  CompiledFlow flow = compile_flow(model);
  WeeklyCalendar arrival_cal(model.arrival.windows, offset);
  std::vector<WeeklyCalendar> pool_cal;
  std::unordered_map<std::string, int> pool_index;
  for (const ResourcePool& p : model.pools) {
    pool_index[p.id] = int(pool_cal.size());
    pool_cal.emplace_back(p.windows, offset);
  }
  std::vector<int> activity_pool(model.activities.size());
  for (std::size_t i = 0; i < model.activities.size(); ++i)
    activity_pool[i] = pool_index.at(model.activities[i].pool);

  // Per-unit next-free instants; requests are served strictly in request
  // order (FIFO per pool), each taking the earliest-available unit with
  // ties resolved by lowest unit index.
  std::vector<std::vector<std::int64_t>> unit_free(model.pools.size());
  for (std::size_t p = 0; p < model.pools.size(); ++p)
    unit_free[p].assign(std::size_t(model.pools[p].size),
                        std::numeric_limits<std::int64_t>::min());

  // Case arrivals: one draw site per case, shared arrival seed.
  constexpr std::uint64_t kArrivalTag = 0xA221ABB1;
  std::vector<std::int64_t> arrivals(std::size_t(config.num_cases));
  std::int64_t t = arrival_cal.next_working(start->epoch_s);
  for (int k = 0; k < config.num_cases; ++k) {
    if (k > 0) {
      DrawStream gap(arrival_seed, std::uint64_t(k), kArrivalTag, 0);
      t = arrival_cal.add_working(t, sample_seconds(model.arrival.inter_arrival, gap));
    }
    arrivals[std::size_t(k)] = t;
  }

  int width = 1;
  for (int v = config.num_cases; v >= 10; v /= 10) ++width;
  auto case_name = [&](int k) {
    std::string digits = std::to_string(k + 1);
    if (int(digits.size()) < width)
      digits.insert(0, std::size_t(width) - digits.size(), '0');
    return "c" + digits;
  };

  struct Token {
    std::int64_t time;
    std::uint64_t seq;
    int case_idx;
    int node;
    bool operator>(const Token& o) const {
      if (time != o.time) return time > o.time;
      return seq > o.seq;
    }
  };
  std::priority_queue<Token, std::vector<Token>, std::greater<Token>> queue;
  std::uint64_t seq = 0;
  for (int k = 0; k < config.num_cases; ++k)
    queue.push(Token{arrivals[std::size_t(k)], seq++, k, flow.start});

  const std::size_t n_nodes = flow.nodes.size();
  auto key = [n_nodes](int case_idx, int node) {
    return std::uint64_t(case_idx) * n_nodes + std::uint64_t(node);
  };
  std::unordered_map<std::uint64_t, int> visit_count;
  std::unordered_map<std::uint64_t, std::pair<int, std::int64_t>> join_state;
  std::vector<int> steps(std::size_t(config.num_cases), 0);

  std::vector<Event> events;
  while (!queue.empty()) {
    Token tok = queue.top();
    queue.pop();
    const FlowNode& node = *flow.nodes[std::size_t(tok.node)];
    switch (node.type) {
      case NodeType::Start:
      case NodeType::End: {
        if (node.type == NodeType::Start)
          queue.push(Token{tok.time, seq++, tok.case_idx, flow.next[std::size_t(tok.node)][0]});
        break;
      }
      case NodeType::Activity: {
        if (++steps[std::size_t(tok.case_idx)] > kCaseStepBudget)
          throw SimulationError("case " + case_name(tok.case_idx) +
                                " exceeded the step budget of " +
                                std::to_string(kCaseStepBudget) + " activity executions");
        int visit = visit_count[key(tok.case_idx, tok.node)]++;
        const int act = flow.activity_of[std::size_t(tok.node)];
        const Activity& activity = model.activities[std::size_t(act)];
        DrawStream s(config.seed, std::uint64_t(tok.case_idx), std::uint64_t(tok.node),
                     std::uint64_t(visit));
        std::int64_t ready = tok.time;
        if (activity.timer) ready += sample_seconds(*activity.timer, s);
        std::int64_t duration = sample_seconds(activity.duration, s);
        const int p = activity_pool[std::size_t(act)];
        auto& units = unit_free[std::size_t(p)];
        std::size_t unit = 0;
        for (std::size_t u = 1; u < units.size(); ++u)
          if (units[u] < units[unit]) unit = u;
        const WeeklyCalendar& cal = pool_cal[std::size_t(p)];
        std::int64_t svc_start = cal.next_working(std::max(ready, units[unit]));
        std::int64_t svc_end = cal.add_working(svc_start, duration);
        units[unit] = svc_end;
        Event e;
        e.case_id = case_name(tok.case_idx);
        e.activity = activity.label;
        e.start = Timestamp{svc_start, offset};
        e.end = Timestamp{svc_end, offset};
        events.push_back(std::move(e));
        queue.push(Token{svc_end, seq++, tok.case_idx, flow.next[std::size_t(tok.node)][0]});
        break;
      }
      case NodeType::XorSplit: {
        int visit = visit_count[key(tok.case_idx, tok.node)]++;
        DrawStream s(config.seed, std::uint64_t(tok.case_idx), std::uint64_t(tok.node),
                     std::uint64_t(visit));
        double u = s.uniform01();
        double cum = 0.0;
        std::size_t pick = node.next.size() - 1;
        for (std::size_t b = 0; b < node.next.size(); ++b) {
          cum += node.probabilities[b];
          if (u < cum) {
            pick = b;
            break;
          }
        }
        queue.push(Token{tok.time, seq++, tok.case_idx, flow.next[std::size_t(tok.node)][pick]});
        break;
      }
      case NodeType::AndSplit: {
        for (int succ : flow.next[std::size_t(tok.node)])
          queue.push(Token{tok.time, seq++, tok.case_idx, succ});
        break;
      }
      case NodeType::AndJoin: {
        auto& [count, latest] = join_state[key(tok.case_idx, tok.node)];
        latest = count == 0 ? tok.time : std::max(latest, tok.time);
        ++count;
        if (count == flow.in_degree[std::size_t(tok.node)]) {
          count = 0;
          queue.push(Token{latest, seq++, tok.case_idx, flow.next[std::size_t(tok.node)][0]});
        }
        break;
      }
    }
  }
  return EventLog::from_events(std::move(events));
}

}  // namespace logdist
