#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "k2q/kpoint.hpp"
#include "k2q/task.hpp"
#include "k2q/verdict.hpp"

namespace k2q::oracles {

// Raised when an input leaves the exact domain (non-integer parameters),
// exceeds an enumeration scale, or an iteration budget runs out.
struct OracleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Exact time-demand analysis for tasks[k] on one processor, constrained
// deadline: schedulable iff the least fixed point of
// t -> C_k + sum_{i<k} ceil(t/T_i) C_i lands at or below D_k.
// All parameters must be integers. The verdict is exact, not sufficient;
// bound carries the finishing time when schedulable.
Verdict tda_exact(const TaskSet& ts, std::size_t k);

struct ExactWcrt {
  bool bounded = false;
  long long wcrt = 0;     // valid when bounded
  long long windows = 0;  // busy-window jobs examined
};

// Exact busy-window worst-case response time on one processor: iterate jobs
// h = 1, 2, ... with finish R_h = min{t : h C_k + sum ceil(t/T_i) C_i <= t},
// stop once R_h <= h T_k, return max_h(R_h - (h-1) T_k). Unbounded when the
// exact utilization sum of tasks 0..k exceeds 1.
ExactWcrt busy_window_exact(const TaskSet& ts, std::size_t k);

// The least fixed point for the h-th job alone.
long long busy_window_job_finish(const TaskSet& ts, std::size_t k, long long h);

// Minimum of the vertex-enumeration program behind the closed-form bound:
// min tk - sum alpha_i u_i t_i* - sum beta_i c_i over t_j* in
// {0, tk - sum_{i>=j} beta_i c_i}. Requires entries.size() <= 12,
// sum alpha_i u_i <= 1 and sum beta_i c_i <= tk.
double lp_min_ck(const KPointInstance& inst);

enum class PermObjective { SchedRhs, ResponseValue };

struct PermResult {
  std::vector<std::size_t> order;  // indices into the input entries
  double value = 0;
};

// Brute force over all orderings of at most 8 entries: minimizes the
// schedulability RHS, maximizes the response value. Ties keep the
// lexicographically smallest order.
PermResult permutation_minmax(const std::vector<KEntry>& entries, double ck,
                              double tk, PermObjective obj);

}  // namespace k2q::oracles
