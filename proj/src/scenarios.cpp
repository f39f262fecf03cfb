#include "logdist/scenarios.hpp"

#include <cmath>

#include "logdist/errors.hpp"

namespace logdist {

namespace {

using Kind = DurationDistribution::Kind;

DurationDistribution fixed(double v) { return {Kind::Fixed, v, 0.0}; }
DurationDistribution uniform(double lo, double hi) { return {Kind::Uniform, lo, hi}; }
DurationDistribution exponential(double mean) { return {Kind::Exponential, mean, 0.0}; }
DurationDistribution normal(double mean, double sd) { return {Kind::Normal, mean, sd}; }

std::vector<CalendarWindow> weekday_windows(int start_s, int end_s) {
  std::vector<CalendarWindow> w;
  for (int d = 0; d < 5; ++d) w.push_back({d, start_s, end_s});
  return w;
}

FlowNode task(const std::string& id, const std::string& activity, const std::string& next) {
  FlowNode n;
  n.id = id;
  n.type = NodeType::Activity;
  n.activity = activity;
  n.next = {next};
  return n;
}

FlowNode xor_split(const std::string& id, std::vector<double> probs, std::vector<std::string> next) {
  FlowNode n;
  n.id = id;
  n.type = NodeType::XorSplit;
  n.probabilities = std::move(probs);
  n.next = std::move(next);
  return n;
}

FlowNode plain(const std::string& id, NodeType type, std::vector<std::string> next) {
  FlowNode n;
  n.id = id;
  n.type = type;
  n.next = std::move(next);
  return n;
}

// Desk-scale loan application process: 12 activities, one rework loop on
// the completeness check, a 3-branch parallel verification block, 3 XOR
// splits, and 3 endings over 6 resource pools. The intake step runs on a
// dedicated single-resource pool with a fixed duration, so case start
// times depend only on the arrival stream.
BpsModel baseline() {
  BpsModel m;
  m.name = "loan-baseline";
  m.arrival.inter_arrival = exponential(4320);  // mean 72 min, around the clock
  m.arrival.first_arrival = Timestamp{1678093200, 0};  // 2023-03-06T09:00:00+00:00, a Monday

  auto business_hours = weekday_windows(9 * 3600, 17 * 3600);
  m.pools = {
      {"reception", 1, business_hours}, {"clerk", 2, business_hours},
      {"appraiser", 5, business_hours}, {"credit officer", 3, business_hours},
      {"risk analyst", 6, business_hours}, {"loan officer", 6, business_hours},
  };

  m.activities = {
      {"Receive application", "reception", fixed(600), {}},
      {"Check application completeness", "clerk", normal(720, 180), {}},
      {"Request missing information", "clerk", uniform(300, 900), {}},
      {"Appraise property", "appraiser", normal(4200, 900), {}},
      {"Check credit history", "credit officer", uniform(1500, 2700), {}},
      {"Check income sources", "risk analyst", normal(2100, 600), {}},
      {"Assess loan risk", "risk analyst", normal(2400, 720), {}},
      {"Reject application", "risk analyst", uniform(480, 960), {}},
      {"Prepare acceptance pack", "loan officer", normal(2400, 600), {}},
      {"Cancel application", "loan officer", uniform(300, 600), {}},
      {"Verify repayment agreement", "loan officer", normal(3000, 720), {}},
      {"Approve and sign loan", "loan officer", normal(1500, 480), {}},
  };

  m.start_node = "start";
  m.nodes = {
      plain("start", NodeType::Start, {"receive"}),
      task("receive", "Receive application", "check"),
      task("check", "Check application completeness", "completeness_gate"),
      xor_split("completeness_gate", {0.2, 0.8}, {"request_info", "verify_split"}),
      task("request_info", "Request missing information", "check"),
      plain("verify_split", NodeType::AndSplit, {"appraise", "credit", "income"}),
      task("appraise", "Appraise property", "verify_join"),
      task("credit", "Check credit history", "verify_join"),
      task("income", "Check income sources", "verify_join"),
      plain("verify_join", NodeType::AndJoin, {"assess"}),
      task("assess", "Assess loan risk", "risk_gate"),
      xor_split("risk_gate", {0.2, 0.8}, {"reject", "pack"}),
      task("reject", "Reject application", "end_rejected"),
      plain("end_rejected", NodeType::End, {}),
      task("pack", "Prepare acceptance pack", "cancel_gate"),
      xor_split("cancel_gate", {0.1, 0.9}, {"cancel", "verify"}),
      task("cancel", "Cancel application", "end_canceled"),
      plain("end_canceled", NodeType::End, {}),
      task("verify", "Verify repayment agreement", "sign"),
      task("sign", "Approve and sign loan", "end_approved"),
      plain("end_approved", NodeType::End, {}),
  };
  return m;
}

// Rearranges the parallel verification trio as a sequence.
void serialize_parallel_block(BpsModel& m) {
  std::vector<FlowNode> nodes;
  for (FlowNode& n : m.nodes) {
    if (n.id == "verify_split" || n.id == "verify_join") continue;
    if (n.id == "completeness_gate") n.next[1] = "appraise";
    if (n.id == "appraise") n.next = {"credit"};
    if (n.id == "credit") n.next = {"income"};
    if (n.id == "income") n.next = {"assess"};
    nodes.push_back(std::move(n));
  }
  m.nodes = std::move(nodes);
}

void shift_gateway_probabilities(BpsModel& m) {
  for (FlowNode& n : m.nodes) {
    if (n.id == "completeness_gate") n.probabilities = {0.7, 0.3};
    if (n.id == "risk_gate") n.probabilities = {0.35, 0.65};
    if (n.id == "cancel_gate") n.probabilities = {0.2, 0.8};
  }
}

DurationDistribution stretch(const DurationDistribution& d, double factor) {
  DurationDistribution out = d;
  out.a = d.a * factor;
  if (d.kind == Kind::Uniform || d.kind == Kind::Normal) out.b = d.b * factor;
  return out;
}

}  // namespace

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names = {"GT", "SEQ", "S-G", "ARR",
                                                 "DUR", "RC",  "CAL", "EXT"};
  return names;
}

BpsModel scenario(const std::string& name) {
  BpsModel m = baseline();
  if (name == "GT") return m;
  if (name == "SEQ") {
    m.name = "loan-seq";
    serialize_parallel_block(m);
    return m;
  }
  if (name == "S-G") {
    m.name = "loan-s-g";
    serialize_parallel_block(m);
    shift_gateway_probabilities(m);
    return m;
  }
  if (name == "ARR") {
    m.name = "loan-arr";
    m.arrival.inter_arrival = exponential(2160);  // twice the arrival rate
    return m;
  }
  if (name == "DUR") {
    m.name = "loan-dur";
    // Longer durations across the board, heaviest on the credit check:
    // its end-time ordering against the income check is what the
    // control-flow measures see.
    for (Activity& a : m.activities) {
      double factor = 1.25;
      if (a.label == "Check credit history") factor = 1.30;
      if (a.label == "Check income sources") factor = 1.21;
      a.duration = stretch(a.duration, factor);
    }
    return m;
  }
  if (name == "RC") {
    m.name = "loan-rc";
    for (ResourcePool& p : m.pools) p.size = (p.size + 1) / 2;  // halve, minimum 1
    return m;
  }
  if (name == "CAL") {
    m.name = "loan-cal";
    for (ResourcePool& p : m.pools) p.windows = weekday_windows(14 * 3600, 22 * 3600);
    return m;
  }
  if (name == "EXT") {
    m.name = "loan-ext";
    for (Activity& a : m.activities) {
      if (a.label == "Prepare acceptance pack" || a.label == "Verify repayment agreement" ||
          a.label == "Approve and sign loan")
        a.timer = uniform(1800, 7200);
      if (a.label == "Assess loan risk") a.timer = uniform(900, 2280);
    }
    return m;
  }
  throw ParameterError("unknown scenario: " + name +
                       " (expected GT, SEQ, S-G, ARR, DUR, RC, CAL or EXT)");
}

}  // namespace logdist
