#include "k2q/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace k2q::oracles {

namespace {

constexpr long long kTimeLimit = 1'000'000'000'000'000LL;  // 1e15 ticks
constexpr long long kWindowLimit = 10'000'000;

long long to_ticks(double x, const char* what) {
  const double r = std::nearbyint(x);
  if (!(std::fabs(x - r) <= 1e-9 * std::max(1.0, std::fabs(x))))
    throw OracleError(std::string(what) + " must be integral for the exact oracle");
  if (r < 1.0 || r > static_cast<double>(kTimeLimit))
    throw OracleError(std::string(what) + " out of the exact oracle's range");
  return static_cast<long long>(r);
}

struct TickTask {
  long long c = 0, t = 0, d = 0;
};

std::vector<TickTask> to_tick_tasks(const TaskSet& ts, std::size_t k) {
  if (k >= ts.size()) throw std::out_of_range("task index out of range");
  std::vector<TickTask> out;
  for (std::size_t i = 0; i <= k; ++i) {
    out.push_back({to_ticks(ts.tasks[i].wcet, "wcet"),
                   to_ticks(ts.tasks[i].period, "period"),
                   to_ticks(ts.tasks[i].deadline, "deadline")});
  }
  return out;
}

// Least t with work + sum_{i<k} ceil(t/T_i) C_i <= t, by fixed-point
// iteration from the given start.
long long fixed_point(const std::vector<TickTask>& tt, long long work,
                      long long start) {
  long long t = start;
  for (;;) {
    __int128 demand = work;
    for (std::size_t i = 0; i + 1 < tt.size(); ++i) {
      const __int128 jobs = (static_cast<__int128>(t) + tt[i].t - 1) / tt[i].t;
      demand += jobs * tt[i].c;
    }
    if (demand > kTimeLimit)
      throw OracleError("busy window exceeds the oracle's horizon");
    const long long next = static_cast<long long>(demand);
    if (next == t) return t;
    t = next;
  }
}

// Exact utilization sum of tasks 0..k as a reduced fraction; throws on
// overflow rather than rounding.
bool util_sum_exceeds_one(const std::vector<TickTask>& tt) {
  long long num = 0, den = 1;
  for (const TickTask& x : tt) {
    __int128 n =
        static_cast<__int128>(num) * x.t + static_cast<__int128>(x.c) * den;
    __int128 d = static_cast<__int128>(den) * x.t;
    // Euclid on __int128 keeps the running fraction reduced.
    __int128 a = n, b = d;
    while (b != 0) {
      const __int128 r = a % b;
      a = b;
      b = r;
    }
    if (a > 1) {
      n /= a;
      d /= a;
    }
    if (n > std::numeric_limits<long long>::max() ||
        d > std::numeric_limits<long long>::max())
      throw OracleError("utilization fraction overflows the exact oracle");
    num = static_cast<long long>(n);
    den = static_cast<long long>(d);
  }
  return num > den;
}

}  // namespace

Verdict tda_exact(const TaskSet& ts, std::size_t k) {
  const std::vector<TickTask> tt = to_tick_tasks(ts, k);
  if (tt.back().d > tt.back().t)
    throw OracleError("time-demand analysis needs a constrained deadline");

  Verdict v;
  v.condition = "tda";
  long long t = tt.back().c;
  for (std::size_t i = 0; i + 1 < tt.size(); ++i) t += tt[i].c;

  for (;;) {
    __int128 demand = tt.back().c;
    for (std::size_t i = 0; i + 1 < tt.size(); ++i) {
      const __int128 jobs = (static_cast<__int128>(t) + tt[i].t - 1) / tt[i].t;
      demand += jobs * tt[i].c;
    }
    if (demand > tt.back().d) {
      v.outcome = Outcome::NotProven;
      v.note = "exact: demand exceeds the deadline";
      return v;
    }
    const long long next = static_cast<long long>(demand);
    if (next == t) {
      v.outcome = Outcome::Schedulable;
      v.bound = static_cast<double>(t);
      v.note = "exact fixed point";
      return v;
    }
    t = next;
  }
}

ExactWcrt busy_window_exact(const TaskSet& ts, std::size_t k) {
  const std::vector<TickTask> tt = to_tick_tasks(ts, k);
  ExactWcrt res;
  if (util_sum_exceeds_one(tt)) return res;  // unbounded backlog

  const long long ck = tt.back().c;
  const long long tk = tt.back().t;
  long long start = ck;
  for (std::size_t i = 0; i + 1 < tt.size(); ++i) start += tt[i].c;

  long long best = 0;
  for (long long h = 1;; ++h) {
    if (h > kWindowLimit)
      throw OracleError("busy window spans too many jobs");
    const long long rh = fixed_point(tt, h * ck, start);
    best = std::max(best, rh - (h - 1) * tk);
    ++res.windows;
    if (rh <= h * tk) break;
    start = rh + ck;
  }
  res.bounded = true;
  res.wcrt = best;
  return res;
}

long long busy_window_job_finish(const TaskSet& ts, std::size_t k, long long h) {
  if (h < 1) throw std::invalid_argument("job index h starts at 1");
  const std::vector<TickTask> tt = to_tick_tasks(ts, k);
  long long start = h * tt.back().c;
  for (std::size_t i = 0; i + 1 < tt.size(); ++i) start += tt[i].c;
  return fixed_point(tt, h * tt.back().c, start);
}

double lp_min_ck(const KPointInstance& inst) {
  const std::size_t n = inst.entries.size();
  if (n > 12) throw OracleError("vertex enumeration limited to 12 entries");
  double rate = 0, demand = 0;
  for (const KEntry& e : inst.entries) {
    rate += e.alpha * e.u;
    demand += e.beta * e.c;
  }
  if (rate > 1.0 + 1e-12)
    throw OracleError("vertex oracle needs sum alpha_i u_i <= 1");
  if (demand > inst.tk * (1.0 + 1e-12))
    throw OracleError("vertex oracle needs sum beta_i c_i <= tk");

  // suffix[j] = sum_{i>=j} beta_i c_i; clamp the induced point at zero to
  // stay inside the polyhedron under rounding.
  std::vector<double> high(n);
  double suffix = 0;
  for (std::size_t j = n; j-- > 0;) {
    suffix += inst.entries[j].beta * inst.entries[j].c;
    high[j] = std::max(0.0, inst.tk - suffix);
  }

  double best = std::numeric_limits<double>::infinity();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    double val = inst.tk - demand;
    for (std::size_t j = 0; j < n; ++j)
      if (mask & (std::size_t{1} << j))
        val -= inst.entries[j].alpha * inst.entries[j].u * high[j];
    best = std::min(best, val);
  }
  return best;
}

namespace {

double sched_rhs(const std::vector<KEntry>& entries,
                 const std::vector<std::size_t>& order, double tk) {
  double rate = 0;
  for (const KEntry& e : entries) rate += e.alpha * e.u;
  double suffix = 0, corr = 0;
  for (std::size_t p = order.size(); p-- > 0;) {
    const KEntry& e = entries[order[p]];
    suffix += e.beta * e.c;
    corr += e.beta * e.c - e.alpha * e.u * suffix;
  }
  return 1.0 - rate - corr / tk;
}

double response_value(const std::vector<KEntry>& entries,
                      const std::vector<std::size_t>& order, double ck) {
  double rate = 0;
  for (const KEntry& e : entries) rate += e.alpha * e.u;
  if (rate >= 1.0) return std::numeric_limits<double>::infinity();
  double suffix = 0, corr = 0;
  for (std::size_t p = order.size(); p-- > 0;) {
    const KEntry& e = entries[order[p]];
    suffix += e.beta * e.c;
    corr += e.alpha * e.u * suffix;
  }
  return (ck + suffix - corr) / (1.0 - rate);
}

}  // namespace

PermResult permutation_minmax(const std::vector<KEntry>& entries, double ck,
                              double tk, PermObjective obj) {
  if (entries.size() > 8)
    throw OracleError("permutation search limited to 8 entries");
  std::vector<std::size_t> order(entries.size());
  std::iota(order.begin(), order.end(), std::size_t{0});

  PermResult best;
  bool have = false;
  std::vector<std::size_t> perm = order;
  do {
    const double val = obj == PermObjective::SchedRhs
                           ? sched_rhs(entries, perm, tk)
                           : response_value(entries, perm, ck);
    const bool better = obj == PermObjective::SchedRhs ? val < best.value
                                                       : val > best.value;
    if (!have || better) {
      best.order = perm;
      best.value = val;
      have = true;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace k2q::oracles
