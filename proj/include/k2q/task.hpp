#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace k2q {

enum class DeadlineModel { Implicit, Constrained, Arbitrary };

const char* model_name(DeadlineModel m);

struct Task {
  std::string id;
  double wcet = 0;      // C
  double period = 0;    // T, minimum inter-arrival time
  double deadline = 0;  // D, relative

  double utilization() const { return wcet / period; }
};

// Tasks are kept in priority order: tasks[0] has the highest priority and the
// task under analysis is addressed by its index.
struct TaskSet {
  std::vector<Task> tasks;
  int processors = 1;

  std::size_t size() const { return tasks.size(); }
  DeadlineModel model() const;
};

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// JSON schema: {"processors": int, "tasks": [{"id": str, "C": num, "T": num, "D": num}]}
// "M" is accepted as an alias for "processors"; "id" defaults to t<index> and
// "D" to T. Rejects nonpositive parameters and per-task utilization above 1.
TaskSet parse_taskset(const std::string& json_text);
TaskSet load_taskset(const std::string& path);
std::string to_json(const TaskSet& ts);

enum class Policy { RateMonotonic, DeadlineMonotonic, Given };

Policy policy_from_name(const std::string& name);  // "rm", "dm", "given"
const char* policy_name(Policy p);

// Stable sort: RM by nondecreasing period, DM by nondecreasing deadline,
// Given keeps the input order. Ties keep the original order.
TaskSet assign_priorities(TaskSet ts, Policy p);

// Higher-priority tasks of tasks[k], split by period against D_k.
struct HpSplit {
  std::vector<Task> shorter;  // T_i <  D_k
  std::vector<Task> longer;   // T_i >= D_k
};
HpSplit split_hp_by_period(const TaskSet& ts, std::size_t k);

}  // namespace k2q
