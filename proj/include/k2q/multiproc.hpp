#pragma once

#include <cstddef>

#include "k2q/task.hpp"
#include "k2q/verdict.hpp"

namespace k2q {

struct GlobalContext {
  int m = 1;
  double u_max = 0;      // max_{j<=k} U_j
  double delta_max = 0;  // max(max_{j<k} U_j, C_k/D_k)
};

GlobalContext make_global_context(const TaskSet& ts, std::size_t k);

// Global RM on M processors, implicit deadlines: schedulable iff
// U_max <= 1 - (2/M) sum U_i + (0.5/M^2)((sum U_i)^2 + sum U_i^2) over i < k.
// NotApplicable for non-implicit prefixes or when some T_i > T_k.
Verdict grm_quadratic_test(const TaskSet& ts, std::size_t k);

// Utilization form: sum_{i<k} U_i / M <= ((k-1)/k)(2 - sqrt(2 + 2 U_max k/(k-1))).
// Needs at least one higher-priority task (throws std::invalid_argument for
// k = 0 in priority-index terms).
Verdict grm_util_test(const TaskSet& ts, std::size_t k);

// The x in (0,1) solving x = 2 - sqrt(2 + 2x), found by bisection to 1e-12,
// and the capacity augmentation factor 1/x.
double grm_capacity_root();
double grm_capacity_factor();

// Global fixed-priority on M processors, constrained deadlines: schedulable
// iff Delta_max <= 1 - (1/M) sum (U_i + C_i/D_k) + (1/M^2) sum_i U_i
// sum_{l>=i} C_l/D_k with HP taken in nonincreasing period order.
// NotApplicable unless sum_{i<=k} U_i <= M and sum_{i<k} C_i/D_k <= M.
Verdict gdm_quadratic_test(const TaskSet& ts, std::size_t k);

// When the quadratic test rejects (or is inapplicable), at least one of
// these terms exceeds 1/3; the witness names the first that does.
enum class SpeedupWitness { Delta, Utilization, Density };

const char* witness_name(SpeedupWitness w);

// Throws std::logic_error when called on an accepted task.
SpeedupWitness gdm_speedup_witness(const TaskSet& ts, std::size_t k);

}  // namespace k2q
