#include <sstream>

#include "doctest.h"
#include "k2q/oracles.hpp"
#include "k2q/sim.hpp"
#include "k2q/task.hpp"

using namespace k2q;
using namespace k2q::oracles;

namespace {

TaskSet make(const std::string& json) { return parse_taskset(json); }

}  // namespace

TEST_CASE("hyperperiod saturates at the cap") {
  CHECK(hyperperiod_capped(make(R"({"tasks":[{"C":1,"T":4},{"C":1,"T":6}]})"),
                           1000) == 12);
  CHECK(hyperperiod_capped(
            make(R"({"tasks":[{"C":1,"T":999983},{"C":1,"T":999979}]})"),
            10'000'000) == 10'000'000);
}

TEST_CASE("three light tasks share two processors") {
  const TaskSet ts = make(
      R"({"M":2,"tasks":[{"C":1,"T":2},{"C":1,"T":2},{"C":1,"T":2}]})");
  SimOptions opts;
  opts.record_trace = true;
  const SimResult res = simulate_global_fp(ts, hyperperiod_capped(ts, 1000),
                                           opts);
  CHECK(res.misses == 0);
  CHECK(res.hyperperiod_covered);
  CHECK(res.conclusive_pass());
  REQUIRE(res.trace.segments.size() >= 2);
  CHECK(res.trace.segments[0].from == 0);
  CHECK(res.trace.segments[0].running == std::vector<int>{0, 1});
  CHECK(res.trace.segments[1].running == std::vector<int>{2});
}

TEST_CASE("a long job starves behind periodic bursts") {
  // Three unit tasks burst every 5 ticks; the bulk task gets only 8 of its
  // 10 ticks before its deadline.
  const TaskSet miss = make(
      R"({"M":2,"tasks":[{"C":1,"T":5},{"C":1,"T":5},{"C":1,"T":5},
                          {"C":10,"T":10}]})");
  const SimResult r = simulate_global_fp(miss, 10);
  CHECK(r.misses == 1);
  CHECK(r.first_miss_time == 10);
  CHECK(r.first_miss_task == 3);
  CHECK_FALSE(r.conclusive_pass());

  // Two ticks less and it finishes exactly at its deadline.
  const TaskSet fits = make(
      R"({"M":2,"tasks":[{"C":1,"T":5},{"C":1,"T":5},{"C":1,"T":5},
                          {"C":8,"T":10}]})");
  const SimResult f = simulate_global_fp(fits, 10);
  CHECK(f.misses == 0);
  CHECK(f.hyperperiod_covered);
}

TEST_CASE("stop at first miss cuts the run short") {
  const TaskSet ts = make(
      R"({"M":1,"tasks":[{"C":2,"T":3},{"C":2,"T":3}]})");
  SimOptions opts;
  opts.stop_at_first_miss = true;
  const SimResult r = simulate_global_fp(ts, 300, opts);
  CHECK(r.misses == 1);
  CHECK(r.first_miss_time == 3);
  CHECK(r.first_miss_task == 1);
}

TEST_CASE("deadline misses keep one record per job") {
  // The second task can never finish: every job of it misses once.
  const TaskSet ts = make(
      R"({"M":1,"tasks":[{"C":2,"T":4},{"C":3,"T":4}]})");
  const SimResult r = simulate_global_fp(ts, 16);
  CHECK(r.misses >= 3);
  CHECK(r.first_miss_task == 1);
  CHECK(r.first_miss_time == 4);
}

TEST_CASE("fractional parameters are out of the simulator's domain") {
  CHECK_THROWS_AS(
      simulate_global_fp(make(R"({"tasks":[{"C":0.5,"T":2}]})"), 10),
      OracleError);
}

TEST_CASE("event stream serializes as JSON lines") {
  const TaskSet ts = make(R"({"tasks":[{"C":1,"T":2}]})");
  SimOptions opts;
  opts.record_trace = true;
  const SimResult r = simulate_global_fp(ts, 4, opts);
  std::ostringstream os;
  write_json_lines(r.trace, os);
  const std::string text = os.str();
  CHECK(text.find("{\"t\":0,\"kind\":\"release\",\"task\":0,\"job\":0}") !=
        std::string::npos);
  CHECK(text.find("\"kind\":\"finish\"") != std::string::npos);
  CHECK(text.rfind("\n") == text.size() - 1);
}
