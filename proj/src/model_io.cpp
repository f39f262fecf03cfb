#include <fstream>
#include <json.hpp>

#include "logdist/errors.hpp"
#include "logdist/simulation.hpp"

namespace logdist {

namespace {

using nlohmann::json;

const char* kWeekdayNames[7] = {"mon", "tue", "wed", "thu", "fri", "sat", "sun"};

int weekday_from_name(const std::string& name) {
  for (int i = 0; i < 7; ++i)
    if (name == kWeekdayNames[i]) return i;
  throw ValidationError("unknown weekday: " + name);
}

std::string hhmm(int seconds) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%02d:%02d", seconds / 3600, (seconds % 3600) / 60);
  return buf;
}

int seconds_from_hhmm(const std::string& text) {
  int h = 0, m = 0;
  if (std::sscanf(text.c_str(), "%d:%d", &h, &m) != 2 || h < 0 || h > 24 || m < 0 || m > 59)
    throw ValidationError("bad HH:MM time: " + text);
  return h * 3600 + m * 60;
}

json distribution_to_json(const DurationDistribution& d) {
  switch (d.kind) {
    case DurationDistribution::Kind::Fixed: return {{"kind", "fixed"}, {"value_s", d.a}};
    case DurationDistribution::Kind::Uniform:
      return {{"kind", "uniform"}, {"low_s", d.a}, {"high_s", d.b}};
    case DurationDistribution::Kind::Exponential: return {{"kind", "exponential"}, {"mean_s", d.a}};
    case DurationDistribution::Kind::Normal:
      return {{"kind", "normal"}, {"mean_s", d.a}, {"stddev_s", d.b}};
  }
  throw ValidationError("unknown distribution kind");
}

DurationDistribution distribution_from_json(const json& j) {
  DurationDistribution d;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "fixed") {
    d.kind = DurationDistribution::Kind::Fixed;
    d.a = j.at("value_s").get<double>();
  } else if (kind == "uniform") {
    d.kind = DurationDistribution::Kind::Uniform;
    d.a = j.at("low_s").get<double>();
    d.b = j.at("high_s").get<double>();
  } else if (kind == "exponential") {
    d.kind = DurationDistribution::Kind::Exponential;
    d.a = j.at("mean_s").get<double>();
  } else if (kind == "normal") {
    d.kind = DurationDistribution::Kind::Normal;
    d.a = j.at("mean_s").get<double>();
    d.b = j.at("stddev_s").get<double>();
  } else {
    throw ValidationError("unknown distribution kind: " + kind);
  }
  return d;
}

json windows_to_json(const std::vector<CalendarWindow>& windows) {
  json out = json::array();
  for (const CalendarWindow& w : windows)
    out.push_back({{"weekday", kWeekdayNames[w.weekday]},
                   {"start", hhmm(w.start_s)},
                   {"end", hhmm(w.end_s)}});
  return out;
}

std::vector<CalendarWindow> windows_from_json(const json& j) {
  std::vector<CalendarWindow> out;
  for (const json& w : j) {
    CalendarWindow cw;
    cw.weekday = weekday_from_name(w.at("weekday").get<std::string>());
    cw.start_s = seconds_from_hhmm(w.at("start").get<std::string>());
    cw.end_s = seconds_from_hhmm(w.at("end").get<std::string>());
    out.push_back(cw);
  }
  return out;
}

const char* node_type_name(NodeType t) {
  switch (t) {
    case NodeType::Start: return "start";
    case NodeType::End: return "end";
    case NodeType::Activity: return "activity";
    case NodeType::XorSplit: return "xor_split";
    case NodeType::AndSplit: return "and_split";
    case NodeType::AndJoin: return "and_join";
  }
  throw ValidationError("unknown node type");
}

NodeType node_type_from_name(const std::string& name) {
  if (name == "start") return NodeType::Start;
  if (name == "end") return NodeType::End;
  if (name == "activity") return NodeType::Activity;
  if (name == "xor_split") return NodeType::XorSplit;
  if (name == "and_split") return NodeType::AndSplit;
  if (name == "and_join") return NodeType::AndJoin;
  throw ValidationError("unknown node type: " + name);
}

}  // namespace

std::string model_to_json_text(const BpsModel& model) {
  json j;
  j["name"] = model.name;
  json arrival;
  arrival["inter_arrival"] = distribution_to_json(model.arrival.inter_arrival);
  if (!model.arrival.windows.empty()) arrival["calendar"] = windows_to_json(model.arrival.windows);
  if (model.arrival.first_arrival)
    arrival["first_arrival"] = format_iso8601(*model.arrival.first_arrival);
  j["arrival"] = arrival;
  json pools = json::array();
  for (const ResourcePool& p : model.pools) {
    json pj{{"id", p.id}, {"size", p.size}};
    if (!p.windows.empty()) pj["calendar"] = windows_to_json(p.windows);
    pools.push_back(pj);
  }
  j["pools"] = pools;
  json activities = json::array();
  for (const Activity& a : model.activities) {
    json aj{{"label", a.label}, {"pool", a.pool}, {"duration", distribution_to_json(a.duration)}};
    if (a.timer) aj["timer"] = distribution_to_json(*a.timer);
    activities.push_back(aj);
  }
  j["activities"] = activities;
  json nodes = json::array();
  for (const FlowNode& n : model.nodes) {
    json nj{{"id", n.id}, {"type", node_type_name(n.type)}};
    if (n.type == NodeType::Activity) nj["activity"] = n.activity;
    if (n.type == NodeType::XorSplit) {
      json branches = json::array();
      for (std::size_t b = 0; b < n.next.size(); ++b)
        branches.push_back({{"probability", n.probabilities[b]}, {"next", n.next[b]}});
      nj["branches"] = branches;
    } else if (n.type == NodeType::AndSplit) {
      nj["next"] = n.next;
    } else if (!n.next.empty()) {
      nj["next"] = n.next[0];
    }
    nodes.push_back(nj);
  }
  j["flow"] = {{"start", model.start_node}, {"nodes", nodes}};
  return j.dump(2) + "\n";
}

BpsModel parse_model(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("model JSON parse error: ") + e.what());
  }
  try {
    BpsModel m;
    m.name = j.value("name", "");
    const json& arrival = j.at("arrival");
    m.arrival.inter_arrival = distribution_from_json(arrival.at("inter_arrival"));
    if (arrival.contains("calendar")) m.arrival.windows = windows_from_json(arrival.at("calendar"));
    if (arrival.contains("first_arrival")) {
      auto ts = parse_iso8601(arrival.at("first_arrival").get<std::string>());
      if (!ts) throw ValidationError("bad first_arrival timestamp");
      m.arrival.first_arrival = *ts;
    }
    for (const json& pj : j.at("pools")) {
      ResourcePool p;
      p.id = pj.at("id").get<std::string>();
      p.size = pj.at("size").get<int>();
      if (pj.contains("calendar")) p.windows = windows_from_json(pj.at("calendar"));
      m.pools.push_back(std::move(p));
    }
    for (const json& aj : j.at("activities")) {
      Activity a;
      a.label = aj.at("label").get<std::string>();
      a.pool = aj.at("pool").get<std::string>();
      a.duration = distribution_from_json(aj.at("duration"));
      if (aj.contains("timer")) a.timer = distribution_from_json(aj.at("timer"));
      m.activities.push_back(std::move(a));
    }
    const json& flow = j.at("flow");
    m.start_node = flow.at("start").get<std::string>();
    for (const json& nj : flow.at("nodes")) {
      FlowNode n;
      n.id = nj.at("id").get<std::string>();
      n.type = node_type_from_name(nj.at("type").get<std::string>());
      if (n.type == NodeType::Activity) n.activity = nj.at("activity").get<std::string>();
      if (n.type == NodeType::XorSplit) {
        for (const json& bj : nj.at("branches")) {
          n.probabilities.push_back(bj.at("probability").get<double>());
          n.next.push_back(bj.at("next").get<std::string>());
        }
      } else if (n.type == NodeType::AndSplit) {
        for (const json& s : nj.at("next")) n.next.push_back(s.get<std::string>());
      } else if (nj.contains("next")) {
        n.next.push_back(nj.at("next").get<std::string>());
      }
      m.nodes.push_back(std::move(n));
    }
    validate_model(m);
    return m;
  } catch (const json::exception& e) {
    throw SchemaError(std::string("model JSON schema error: ") + e.what());
  }
}

BpsModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open model file: " + path.string());
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_model(text);
}

void save_model(const BpsModel& model, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw SchemaError("cannot open model file for writing: " + path.string());
  out << model_to_json_text(model);
  if (!out) throw SchemaError("write failed: " + path.string());
}

}  // namespace logdist
