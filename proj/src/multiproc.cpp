#include "k2q/multiproc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "k2q/kpoint.hpp"

namespace k2q {

GlobalContext make_global_context(const TaskSet& ts, std::size_t k) {
  if (k >= ts.size()) throw std::out_of_range("task index out of range");
  GlobalContext ctx;
  ctx.m = ts.processors;
  const Task& tk = ts.tasks[k];
  ctx.u_max = tk.utilization();
  ctx.delta_max = tk.wcet / tk.deadline;
  for (std::size_t i = 0; i < k; ++i) {
    ctx.u_max = std::max(ctx.u_max, ts.tasks[i].utilization());
    ctx.delta_max = std::max(ctx.delta_max, ts.tasks[i].utilization());
  }
  return ctx;
}

namespace {

bool implicit_prefix(const TaskSet& ts, std::size_t k) {
  for (std::size_t i = 0; i <= k; ++i)
    if (ts.tasks[i].deadline != ts.tasks[i].period) return false;
  return true;
}

bool constrained_prefix(const TaskSet& ts, std::size_t k) {
  for (std::size_t i = 0; i <= k; ++i)
    if (ts.tasks[i].deadline > ts.tasks[i].period) return false;
  return true;
}

bool rate_ordered_prefix(const TaskSet& ts, std::size_t k) {
  for (std::size_t i = 0; i < k; ++i)
    if (ts.tasks[i].period > ts.tasks[k].period) return false;
  return true;
}

}  // namespace

Verdict grm_quadratic_test(const TaskSet& ts, std::size_t k) {
  const GlobalContext ctx = make_global_context(ts, k);
  Verdict v;
  v.condition = "grm-quadratic";
  if (!implicit_prefix(ts, k)) {
    v.note = "needs implicit deadlines up to the task under analysis";
    return v;
  }
  if (!rate_ordered_prefix(ts, k)) {
    v.note = "needs rate-monotonic priorities: some T_i > T_k";
    return v;
  }

  std::vector<double> u;
  for (std::size_t i = 0; i < k; ++i) u.push_back(ts.tasks[i].utilization());
  const double inv_m = 1.0 / ctx.m;
  Verdict inner = quadratic_bound_uniform(u, inv_m, inv_m, ctx.u_max);
  v.outcome = inner.outcome;
  v.bound = inner.bound;
  return v;
}

Verdict grm_util_test(const TaskSet& ts, std::size_t k) {
  const GlobalContext ctx = make_global_context(ts, k);
  if (k == 0)
    throw std::invalid_argument("needs at least one higher-priority task");
  Verdict v;
  v.condition = "grm-utilization";
  if (!implicit_prefix(ts, k)) {
    v.note = "needs implicit deadlines up to the task under analysis";
    return v;
  }
  if (!rate_ordered_prefix(ts, k)) {
    v.note = "needs rate-monotonic priorities: some T_i > T_k";
    return v;
  }

  const double kd = static_cast<double>(k) + 1.0;
  double hp_util = 0.0;
  for (std::size_t i = 0; i < k; ++i) hp_util += ts.tasks[i].utilization();

  v.bound = ((kd - 1.0) / kd) *
            (2.0 - std::sqrt(2.0 + 2.0 * ctx.u_max * kd / (kd - 1.0)));
  v.outcome = (hp_util / ctx.m <= v.bound + kRatioTol) ? Outcome::Schedulable
                                                       : Outcome::NotProven;
  return v;
}

double grm_capacity_root() {
  double lo = 0.0, hi = 1.0;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (mid - (2.0 - std::sqrt(2.0 + 2.0 * mid)) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double grm_capacity_factor() { return 1.0 / grm_capacity_root(); }

namespace {

struct GdmEval {
  bool constrained = false;
  double util_incl = 0;   // sum_{i<=k} U_i
  double dens_hp = 0;     // sum_{i<k} C_i/D_k
  GlobalContext ctx;
  Verdict verdict;        // condition "gdm-quadratic"
};

GdmEval gdm_eval(const TaskSet& ts, std::size_t k) {
  GdmEval ev;
  ev.ctx = make_global_context(ts, k);
  ev.constrained = constrained_prefix(ts, k);
  ev.verdict.condition = "gdm-quadratic";

  const Task& tk = ts.tasks[k];
  ev.util_incl = tk.utilization();
  for (std::size_t i = 0; i < k; ++i) {
    ev.util_incl += ts.tasks[i].utilization();
    ev.dens_hp += ts.tasks[i].wcet / tk.deadline;
  }

  if (!ev.constrained) {
    ev.verdict.note = "needs constrained deadlines up to the task under analysis";
    return ev;
  }
  if (ev.util_incl > ev.ctx.m + kRatioTol) {
    ev.verdict.note = "utilization hypothesis fails: sum_{i<=k} U_i > M";
    return ev;
  }

  std::vector<Task> hp(ts.tasks.begin(), ts.tasks.begin() + k);
  std::stable_sort(hp.begin(), hp.end(), [](const Task& a, const Task& b) {
    return a.period > b.period;
  });

  const double inv_m = 1.0 / ev.ctx.m;
  KPointInstance inst;
  inst.ck = ev.ctx.delta_max * tk.deadline;
  inst.tk = tk.deadline;
  for (const Task& t : hp)
    inst.entries.push_back({inv_m, inv_m, t.wcet, t.utilization()});

  Verdict inner = quadratic_bound_general(inst);
  ev.verdict.outcome = inner.outcome;
  ev.verdict.bound = inner.bound;
  if (inner.outcome == Outcome::NotApplicable)
    ev.verdict.note = "density hypothesis fails: sum_{i<k} C_i/D_k > M";
  return ev;
}

}  // namespace

Verdict gdm_quadratic_test(const TaskSet& ts, std::size_t k) {
  return gdm_eval(ts, k).verdict;
}

const char* witness_name(SpeedupWitness w) {
  switch (w) {
    case SpeedupWitness::Delta: return "delta";
    case SpeedupWitness::Utilization: return "utilization";
    default: return "density";
  }
}

SpeedupWitness gdm_speedup_witness(const TaskSet& ts, std::size_t k) {
  const GdmEval ev = gdm_eval(ts, k);
  if (ev.verdict.outcome == Outcome::Schedulable)
    throw std::logic_error("no witness: the task was accepted");
  if (!ev.constrained)
    throw std::logic_error("no witness: test needs constrained deadlines");

  const double third = 1.0 / 3.0;
  if (ev.ctx.delta_max > third) return SpeedupWitness::Delta;
  if (ev.util_incl - ts.tasks[k].utilization() > third * ev.ctx.m)
    return SpeedupWitness::Utilization;
  if (ev.dens_hp > third * ev.ctx.m) return SpeedupWitness::Density;
  throw std::logic_error("no witness found");
}

}  // namespace k2q
