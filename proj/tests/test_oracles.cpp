#include "doctest.h"
#include "k2q/oracles.hpp"
#include "k2q/task.hpp"

using namespace k2q;
using namespace k2q::oracles;

namespace {

TaskSet make(const std::string& json) { return parse_taskset(json); }

}  // namespace

TEST_CASE("time-demand analysis") {
  const TaskSet accept = make(R"({"tasks":[{"C":2,"T":4},{"C":1,"T":3,"D":3}]})");
  const Verdict a = tda_exact(accept, 1);
  CHECK(a.ok());
  CHECK(a.condition == "tda");
  CHECK(a.bound == 3);

  const TaskSet reject = make(R"({"tasks":[{"C":2,"T":3},{"C":2,"T":4}]})");
  const Verdict r = tda_exact(reject, 1);
  CHECK(r.outcome == Outcome::NotProven);

  // Arbitrary deadlines and fractional parameters are out of domain.
  CHECK_THROWS_AS(tda_exact(make(R"({"tasks":[{"C":1,"T":2,"D":3}]})"), 0),
                  OracleError);
  CHECK_THROWS_AS(tda_exact(make(R"({"tasks":[{"C":0.5,"T":2}]})"), 0),
                  OracleError);
}

TEST_CASE("busy window worst-case response") {
  const TaskSet ts = make(
      R"({"tasks":[{"C":1,"T":3},{"C":1,"T":20},{"C":1,"T":4,"D":8}]})");
  const ExactWcrt e = busy_window_exact(ts, 2);
  REQUIRE(e.bounded);
  CHECK(e.wcrt == 3);
  CHECK(e.windows == 1);

  // Saturated utilization keeps the window finite but long.
  const TaskSet sat = make(R"({"tasks":[{"C":1,"T":2},{"C":2,"T":4,"D":12}]})");
  const ExactWcrt s = busy_window_exact(sat, 1);
  REQUIRE(s.bounded);
  CHECK(s.wcrt == 4);

  const TaskSet over = make(R"({"tasks":[{"C":2,"T":3},{"C":2,"T":4,"D":20}]})");
  CHECK_FALSE(busy_window_exact(over, 1).bounded);
}

TEST_CASE("busy window spans several jobs") {
  // High utilization with an arbitrary deadline: the maximum response shows
  // up several jobs into the window.
  const TaskSet ts = make(
      R"({"tasks":[{"C":26,"T":70},{"C":62,"T":100,"D":1000}]})");
  // Window finishes 114, 202, 316, 404, 518, 606, 694; the fifth job's
  // 518 - 400 = 118 dominates and the seventh ends the busy period.
  const ExactWcrt e = busy_window_exact(ts, 1);
  REQUIRE(e.bounded);
  CHECK(e.windows == 7);
  CHECK(e.wcrt == 118);
}

TEST_CASE("vertex enumeration for the minimal demand") {
  KPointInstance none;
  none.ck = 1;
  none.tk = 10;
  CHECK(lp_min_ck(none) == doctest::Approx(10.0));

  KPointInstance one;
  one.entries = {{1, 1, 10, 0.5}};
  one.ck = 1;
  one.tk = 10;
  CHECK(lp_min_ck(one) == doctest::Approx(0.0));

  KPointInstance pair;
  pair.entries = {{1, 1, 1, 0.25}, {1, 1, 1, 0.25}};
  pair.ck = 1;
  pair.tk = 10;
  CHECK(lp_min_ck(pair) == doctest::Approx(3.75).epsilon(1e-12));

  KPointInstance big;
  big.entries.assign(13, {1, 1, 0.01, 0.01});
  big.ck = 1;
  big.tk = 10;
  CHECK_THROWS_AS(lp_min_ck(big), OracleError);
}

TEST_CASE("permutation search") {
  // Rates sum to 0.5, so the response objective stays finite.
  const std::vector<KEntry> entries = {{1, 1, 2, 0.25}, {1, 1, 8, 0.25}};
  const PermResult sched = permutation_minmax(entries, 1, 20,
                                              PermObjective::SchedRhs);
  REQUIRE(sched.order.size() == 2);
  CHECK(sched.order[0] == 1);  // the heavier demand goes first
  CHECK(sched.order[1] == 0);

  const PermResult resp = permutation_minmax(entries, 1, 20,
                                             PermObjective::ResponseValue);
  CHECK(resp.order[0] == 1);
  CHECK(resp.value == doctest::Approx(16.0).epsilon(1e-12));

  // Equal entries keep the lexicographically smallest order.
  const std::vector<KEntry> tied = {{1, 1, 2, 0.25}, {1, 1, 2, 0.25}};
  const PermResult t = permutation_minmax(tied, 1, 20, PermObjective::SchedRhs);
  CHECK(t.order[0] == 0);
  CHECK(t.order[1] == 1);

  const std::vector<KEntry> many(9, KEntry{1, 1, 1, 0.05});
  CHECK_THROWS_AS(permutation_minmax(many, 1, 100, PermObjective::SchedRhs),
                  OracleError);
}
