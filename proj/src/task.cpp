#include "k2q/task.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace k2q {

const char* model_name(DeadlineModel m) {
  switch (m) {
    case DeadlineModel::Implicit: return "implicit";
    case DeadlineModel::Constrained: return "constrained";
    default: return "arbitrary";
  }
}

DeadlineModel TaskSet::model() const {
  bool implicit = true;
  bool constrained = true;
  for (const Task& t : tasks) {
    if (t.deadline != t.period) implicit = false;
    if (t.deadline > t.period) constrained = false;
  }
  if (implicit) return DeadlineModel::Implicit;
  if (constrained) return DeadlineModel::Constrained;
  return DeadlineModel::Arbitrary;
}

TaskSet parse_taskset(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("task set must be a JSON object");

  TaskSet ts;
  if (j.contains("processors"))
    ts.processors = j.at("processors").get<int>();
  else if (j.contains("M"))
    ts.processors = j.at("M").get<int>();
  if (ts.processors < 1) throw ParseError("processors must be at least 1");

  if (!j.contains("tasks") || !j.at("tasks").is_array())
    throw ParseError("missing \"tasks\" array");

  std::size_t idx = 0;
  for (const auto& node : j.at("tasks")) {
    if (!node.is_object()) throw ParseError("task entries must be objects");
    Task t;
    t.id = node.value("id", "t" + std::to_string(idx + 1));
    if (!node.contains("C") || !node.contains("T"))
      throw ParseError("task " + t.id + ": C and T are required");
    t.wcet = node.at("C").get<double>();
    t.period = node.at("T").get<double>();
    t.deadline = node.contains("D") ? node.at("D").get<double>() : t.period;
    if (!(t.wcet > 0)) throw ParseError("task " + t.id + ": C must be positive");
    if (!(t.period > 0)) throw ParseError("task " + t.id + ": T must be positive");
    if (!(t.deadline > 0)) throw ParseError("task " + t.id + ": D must be positive");
    if (t.wcet > t.period)
      throw ParseError("task " + t.id + ": utilization exceeds 1");
    ts.tasks.push_back(std::move(t));
    ++idx;
  }
  return ts;
}

TaskSet load_taskset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_taskset(buf.str());
}

std::string to_json(const TaskSet& ts) {
  nlohmann::json j;
  j["processors"] = ts.processors;
  j["tasks"] = nlohmann::json::array();
  for (const Task& t : ts.tasks) {
    j["tasks"].push_back({{"id", t.id}, {"C", t.wcet}, {"T", t.period}, {"D", t.deadline}});
  }
  return j.dump();
}

Policy policy_from_name(const std::string& name) {
  if (name == "rm") return Policy::RateMonotonic;
  if (name == "dm") return Policy::DeadlineMonotonic;
  if (name == "given") return Policy::Given;
  throw ParseError("unknown policy \"" + name + "\" (want rm, dm or given)");
}

const char* policy_name(Policy p) {
  switch (p) {
    case Policy::RateMonotonic: return "rm";
    case Policy::DeadlineMonotonic: return "dm";
    default: return "given";
  }
}

TaskSet assign_priorities(TaskSet ts, Policy p) {
  if (p == Policy::RateMonotonic) {
    std::stable_sort(ts.tasks.begin(), ts.tasks.end(),
                     [](const Task& a, const Task& b) { return a.period < b.period; });
  } else if (p == Policy::DeadlineMonotonic) {
    std::stable_sort(ts.tasks.begin(), ts.tasks.end(),
                     [](const Task& a, const Task& b) { return a.deadline < b.deadline; });
  }
  return ts;
}

HpSplit split_hp_by_period(const TaskSet& ts, std::size_t k) {
  if (k >= ts.size()) throw std::out_of_range("task index out of range");
  HpSplit split;
  const double dk = ts.tasks[k].deadline;
  for (std::size_t i = 0; i < k; ++i) {
    if (ts.tasks[i].period < dk)
      split.shorter.push_back(ts.tasks[i]);
    else
      split.longer.push_back(ts.tasks[i]);
  }
  return split;
}

}  // namespace k2q
