#include "k2q/sim.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <ostream>

#include "k2q/oracles.hpp"

namespace k2q::oracles {

const char* event_name(EvKind k) {
  switch (k) {
    case EvKind::Release: return "release";
    case EvKind::Start: return "start";
    case EvKind::Preempt: return "preempt";
    case EvKind::Finish: return "finish";
    default: return "miss";
  }
}

namespace {

constexpr long long kInf = std::numeric_limits<long long>::max();

long long sim_ticks(double x, const char* what) {
  const double r = std::nearbyint(x);
  if (!(std::fabs(x - r) <= 1e-9 * std::max(1.0, std::fabs(x))) || r < 1.0 ||
      r > 4.0e18)
    throw OracleError(std::string(what) + " must be a positive integer tick count");
  return static_cast<long long>(r);
}

struct Job {
  long long rem = 0;
  long long deadline = 0;
  long long id = 0;
  bool missed = false;
};

}  // namespace

long long hyperperiod_capped(const TaskSet& ts, long long cap) {
  long long l = 1;
  for (const Task& t : ts.tasks) {
    const long long p = sim_ticks(t.period, "period");
    const long long g = std::gcd(l, p);
    if (l / g > cap / p) return cap;
    l = (l / g) * p;
    if (l >= cap) return cap;
  }
  return l;
}

SimResult simulate_global_fp(const TaskSet& ts, long long horizon,
                             const SimOptions& opts) {
  const int n = static_cast<int>(ts.size());
  const int m = ts.processors;
  horizon = std::min(horizon, opts.horizon_cap);

  std::vector<long long> c(n), t(n), d(n);
  for (int i = 0; i < n; ++i) {
    c[i] = sim_ticks(ts.tasks[i].wcet, "wcet");
    t[i] = sim_ticks(ts.tasks[i].period, "period");
    d[i] = sim_ticks(ts.tasks[i].deadline, "deadline");
  }

  SimResult res;
  res.horizon = horizon;
  const long long hyper = hyperperiod_capped(ts, kInf);
  res.hyperperiod_covered = hyper < kInf && horizon >= hyper;

  std::vector<std::deque<Job>> queue(n);
  std::vector<long long> next_rel(n, 0);
  std::vector<long long> released(n, 0);
  std::vector<int> running, prev_running;

  auto emit = [&](long long when, EvKind kind, int task, long long job) {
    if (opts.record_trace) res.trace.events.push_back({when, kind, task, job});
  };

  long long now = 0;
  while (now < horizon) {
    // Releases due at the current instant.
    for (int i = 0; i < n; ++i) {
      while (next_rel[i] == now) {
        queue[i].push_back({c[i], now + d[i], released[i]});
        emit(now, EvKind::Release, i, released[i]);
        ++released[i];
        next_rel[i] += t[i];
      }
    }

    // The m highest-priority tasks with pending work run; each task runs
    // its oldest unfinished job.
    running.clear();
    for (int i = 0; i < n && static_cast<int>(running.size()) < m; ++i)
      if (!queue[i].empty()) running.push_back(i);

    if (opts.record_trace) {
      for (int i : running)
        if (!std::binary_search(prev_running.begin(), prev_running.end(), i))
          emit(now, EvKind::Start, i, queue[i].front().id);
      for (int i : prev_running)
        if (!std::binary_search(running.begin(), running.end(), i) &&
            !queue[i].empty())
          emit(now, EvKind::Preempt, i, queue[i].front().id);
    }

    // Next decision instant: a release, a running job's completion, a
    // pending deadline, or the horizon itself.
    long long next_t = horizon;
    for (int i = 0; i < n; ++i)
      if (next_rel[i] < horizon) next_t = std::min(next_t, next_rel[i]);
    for (int i : running) next_t = std::min(next_t, now + queue[i].front().rem);
    for (int i = 0; i < n; ++i)
      for (const Job& j : queue[i])
        if (!j.missed && j.deadline > now && j.deadline <= horizon)
          next_t = std::min(next_t, j.deadline);

    if (opts.record_trace && !running.empty() && next_t > now)
      res.trace.segments.push_back({now, next_t, running});

    const long long delta = next_t - now;
    for (int i : running) queue[i].front().rem -= delta;
    now = next_t;
    prev_running = running;

    // Order at one instant: finishes first, then misses, then the loop
    // head releases. A job finishing right at its deadline is on time.
    for (int i : running) {
      if (queue[i].front().rem == 0) {
        emit(now, EvKind::Finish, i, queue[i].front().id);
        queue[i].pop_front();
      }
    }
    for (int i = 0; i < n; ++i) {
      for (Job& j : queue[i]) {
        if (!j.missed && j.deadline == now) {
          j.missed = true;
          ++res.misses;
          emit(now, EvKind::Miss, i, j.id);
          if (res.first_miss_time < 0) {
            res.first_miss_time = now;
            res.first_miss_task = i;
          }
          if (opts.stop_at_first_miss) return res;
        }
      }
    }
  }
  return res;
}

void write_json_lines(const SimTrace& trace, std::ostream& out) {
  for (const SimEvent& e : trace.events) {
    out << "{\"t\":" << e.time << ",\"kind\":\"" << event_name(e.kind)
        << "\",\"task\":" << e.task << ",\"job\":" << e.job << "}\n";
  }
}

}  // namespace k2q::oracles
