#pragma once

#include <iosfwd>
#include <vector>

#include "k2q/task.hpp"

namespace k2q::oracles {

enum class EvKind { Release, Start, Preempt, Finish, Miss };

const char* event_name(EvKind k);

struct SimEvent {
  long long time = 0;
  EvKind kind = EvKind::Release;
  int task = 0;       // index into the task set, 0 = highest priority
  long long job = 0;  // per-task job counter from 0
};

// Execution slice: the listed tasks occupy processors over [from, to).
struct SimSegment {
  long long from = 0;
  long long to = 0;
  std::vector<int> running;
};

struct SimTrace {
  std::vector<SimEvent> events;
  std::vector<SimSegment> segments;  // filled only when tracing
};

struct SimOptions {
  long long horizon_cap = 10'000'000;
  bool record_trace = false;
  bool stop_at_first_miss = false;
};

struct SimResult {
  long long horizon = 0;
  bool hyperperiod_covered = false;  // horizon reached the period lcm
  long long misses = 0;
  long long first_miss_time = -1;
  int first_miss_task = -1;
  SimTrace trace;

  // A clean run that never saw the full hyperperiod proves nothing.
  bool conclusive_pass() const { return misses == 0 && hyperperiod_covered; }
};

// Event-driven preemptive global fixed-priority schedule on integer ticks:
// synchronous release at 0, strictly periodic releases, the M
// highest-priority ready jobs run at every instant. Priority follows the
// task-set order; at equal instants the lower task index wins and jobs of
// one task run first-in-first-out. A job missing its deadline keeps running;
// the miss is recorded once, at the deadline tick. Releases with deadlines
// beyond the horizon are left undecided.
SimResult simulate_global_fp(const TaskSet& ts, long long horizon,
                             const SimOptions& opts = {});

// lcm of the periods, saturated at cap.
long long hyperperiod_capped(const TaskSet& ts, long long cap);

// One JSON object per event per line.
void write_json_lines(const SimTrace& trace, std::ostream& out);

}  // namespace k2q::oracles
