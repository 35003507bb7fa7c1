#pragma once

#include <cstddef>
#include <optional>

#include "k2q/task.hpp"
#include "k2q/verdict.hpp"

namespace k2q {

// Demand of tasks[k] folded into a window of length D_k: every job of the
// task itself that can fall inside the window, plus one carried-in job of
// each higher-priority task whose period is at least D_k.
struct VirtualTask {
  double ck_prime = 0;  // ceil(D_k/T_k)*C_k + sum of long-period HP wcets
  double dk = 0;
  double tk = 0;        // == dk
};

VirtualTask make_virtual_task(const TaskSet& ts, std::size_t k);

// Whole-window test for any deadline model: the virtual task must clear the
// quadratic bound over the short-period HP tasks, indexed by nondecreasing
// (ceil(D_k/T_i) - 1)*T_i. NotApplicable unless both sum C_i <= D_k and
// sum U_i <= 1 hold over those tasks.
Verdict window_quadratic_test(const TaskSet& ts, std::size_t k);

// Bound on the finishing time of the h-th job of tasks[k] in a busy window,
// h >= 1; HP tasks are taken in nonincreasing period order. Unbounded when
// sum_{i<k} U_i >= 1.
ResponseBound job_finish_bound(const TaskSet& ts, std::size_t k, long long h);

// Worst-case response time bound (the h = 1 job dominates). nullopt when
// sum_{i<=k} U_i > 1, where the dominance argument fails.
std::optional<ResponseBound> wcrt_bound(const TaskSet& ts, std::size_t k);

// The response bound compared against D_k in normalized form:
// C_k/D_k <= 1 - sum U_i - sum C_i/D_k + [sum_i U_i sum_{l>=i} C_l]/D_k,
// HP in nonincreasing period order. NotApplicable when sum_{i<=k} U_i > 1.
Verdict response_sched_test(const TaskSet& ts, std::size_t k);

// Utilization thresholds for RM with any deadline ratio, beta = T_k/D_k.
// bound_exclusive caps sum_{i<k} U_i (defined for k >= 2, NaN for k = 1);
// bound_inclusive caps sum_{i<=k} U_i. Schedulable if either check passes.
// Requires T_i <= T_k for all higher-priority tasks.
struct RmUtilBounds {
  double bound_exclusive = 0;
  double bound_inclusive = 0;
  Verdict verdict;
};
RmUtilBounds rm_util_bounds(const TaskSet& ts, std::size_t k);

}  // namespace k2q
