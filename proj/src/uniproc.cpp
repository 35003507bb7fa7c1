#include "k2q/uniproc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "k2q/kpoint.hpp"

namespace k2q {

namespace {

// Higher-priority tasks of tasks[k] in nonincreasing period order; the
// response-style bounds require this last-release indexing.
std::vector<Task> hp_by_period_desc(const TaskSet& ts, std::size_t k) {
  std::vector<Task> hp(ts.tasks.begin(), ts.tasks.begin() + k);
  std::stable_sort(hp.begin(), hp.end(), [](const Task& a, const Task& b) {
    return a.period > b.period;
  });
  return hp;
}

double hp_util_sum(const TaskSet& ts, std::size_t k) {
  double s = 0.0;
  for (std::size_t i = 0; i < k; ++i) s += ts.tasks[i].utilization();
  return s;
}

}  // namespace

VirtualTask make_virtual_task(const TaskSet& ts, std::size_t k) {
  if (k >= ts.size()) throw std::out_of_range("task index out of range");
  const Task& tk = ts.tasks[k];
  VirtualTask vt;
  vt.ck_prime = std::ceil(tk.deadline / tk.period) * tk.wcet;
  for (const Task& t : split_hp_by_period(ts, k).longer) vt.ck_prime += t.wcet;
  vt.dk = tk.deadline;
  vt.tk = tk.deadline;
  return vt;
}

Verdict window_quadratic_test(const TaskSet& ts, std::size_t k) {
  const VirtualTask vt = make_virtual_task(ts, k);
  std::vector<Task> hp1 = split_hp_by_period(ts, k).shorter;

  // Last-release points inside the window: (ceil(D_k/T_i) - 1) T_i.
  std::stable_sort(hp1.begin(), hp1.end(), [&](const Task& a, const Task& b) {
    return (std::ceil(vt.dk / a.period) - 1.0) * a.period <
           (std::ceil(vt.dk / b.period) - 1.0) * b.period;
  });

  KPointInstance inst;
  inst.ck = vt.ck_prime;
  inst.tk = vt.dk;
  for (const Task& t : hp1)
    inst.entries.push_back({1.0, 1.0, t.wcet, t.utilization()});

  Verdict v = quadratic_bound_general(inst);
  v.condition = "window-quadratic";
  return v;
}

ResponseBound job_finish_bound(const TaskSet& ts, std::size_t k, long long h) {
  if (k >= ts.size()) throw std::out_of_range("task index out of range");
  if (h < 1) throw std::invalid_argument("job index h starts at 1");

  KPointInstance inst;
  inst.ck = static_cast<double>(h) * ts.tasks[k].wcet;
  inst.tk = ts.tasks[k].deadline;
  for (const Task& t : hp_by_period_desc(ts, k))
    inst.entries.push_back({1.0, 1.0, t.wcet, t.utilization()});
  return response_bound_general(inst);
}

std::optional<ResponseBound> wcrt_bound(const TaskSet& ts, std::size_t k) {
  if (k >= ts.size()) throw std::out_of_range("task index out of range");
  if (hp_util_sum(ts, k) + ts.tasks[k].utilization() > 1.0) return std::nullopt;
  return job_finish_bound(ts, k, 1);
}

Verdict response_sched_test(const TaskSet& ts, std::size_t k) {
  if (k >= ts.size()) throw std::out_of_range("task index out of range");
  Verdict v;
  v.condition = "response-bound";

  const Task& tk = ts.tasks[k];
  if (hp_util_sum(ts, k) + tk.utilization() > 1.0) {
    v.note = "utilization hypothesis fails: sum_{i<=k} U_i > 1";
    return v;
  }

  const std::vector<Task> hp = hp_by_period_desc(ts, k);
  double rate = 0.0;
  double demand = 0.0;
  double suffix = 0.0;
  double corr = 0.0;
  for (std::size_t i = hp.size(); i-- > 0;) {
    suffix += hp[i].wcet;
    corr += hp[i].utilization() * suffix;
  }
  for (const Task& t : hp) {
    rate += t.utilization();
    demand += t.wcet;
  }

  v.bound = 1.0 - rate - demand / tk.deadline + corr / tk.deadline;
  v.outcome = (tk.wcet / tk.deadline <= v.bound + kRatioTol)
                  ? Outcome::Schedulable
                  : Outcome::NotProven;
  return v;
}

RmUtilBounds rm_util_bounds(const TaskSet& ts, std::size_t k) {
  if (k >= ts.size()) throw std::out_of_range("task index out of range");
  const Task& tk = ts.tasks[k];
  const double beta = tk.period / tk.deadline;
  const double uk = tk.utilization();
  const long long n = static_cast<long long>(k) + 1;

  RmUtilBounds rb;
  rb.verdict.condition = "rm-utilization";
  rb.bound_exclusive = std::numeric_limits<double>::quiet_NaN();
  rb.bound_inclusive = std::numeric_limits<double>::quiet_NaN();

  // The thresholds replace each C_i by U_i T_k, which needs T_i <= T_k.
  for (std::size_t i = 0; i < k; ++i) {
    if (ts.tasks[i].period > tk.period) {
      rb.verdict.note = "needs rate-monotonic priorities: some T_i > T_k";
      return rb;
    }
  }

  if (n >= 2) {
    const double kd = static_cast<double>(n);
    rb.bound_exclusive =
        ((kd - 1.0) / (beta * kd)) *
        (1.0 + beta -
         std::sqrt(1.0 + beta * beta + 2.0 * beta * beta * uk * kd / (kd - 1.0)));
    rb.bound_inclusive = *util_bound_inclusive_beta(n, 1.0, beta);
  } else {
    // With no higher-priority task the interference-free threshold 1/beta
    // remains; the exclusive form needs at least one such task.
    rb.bound_exclusive = std::numeric_limits<double>::quiet_NaN();
    rb.bound_inclusive = 1.0 / beta;
  }

  const double hp_util = hp_util_sum(ts, k);
  const bool by_exclusive = hp_util <= rb.bound_exclusive + kRatioTol;
  const bool by_inclusive = hp_util + uk <= rb.bound_inclusive + kRatioTol;
  rb.verdict.bound = rb.bound_inclusive;
  if (by_exclusive || by_inclusive) {
    rb.verdict.outcome = Outcome::Schedulable;
    rb.verdict.note = by_exclusive && by_inclusive ? "both thresholds hold"
                      : by_exclusive               ? "exclusive threshold holds"
                                                   : "inclusive threshold holds";
  } else {
    rb.verdict.outcome = Outcome::NotProven;
  }
  return rb;
}

}  // namespace k2q
