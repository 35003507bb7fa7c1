#include <cmath>

#include "doctest.h"
#include "k2q/kpoint.hpp"
#include "k2q/multiproc.hpp"
#include "k2q/task.hpp"

using namespace k2q;

namespace {

TaskSet make(const std::string& json) { return parse_taskset(json); }

}  // namespace

TEST_CASE("global context") {
  const TaskSet ts = make(
      R"({"M":2,"tasks":[{"C":2,"T":4},{"C":1,"T":10},{"C":3,"T":12,"D":10}]})");
  const GlobalContext ctx = make_global_context(ts, 2);
  CHECK(ctx.m == 2);
  CHECK(ctx.u_max == doctest::Approx(0.5));
  CHECK(ctx.delta_max == doctest::Approx(0.5));  // max(0.3, 0.5, 0.1)
}

TEST_CASE("global rate-monotonic quadratic test") {
  const TaskSet ts = make(
      R"({"M":2,"tasks":[{"C":2,"T":4},{"C":2,"T":4}]})");
  const Verdict v = grm_quadratic_test(ts, 1);
  CHECK(v.condition == "grm-quadratic");
  // One interfering share of 1/2 on two processors:
  // 1 - 1*(1/2) + (1/4)*(1/4) = 0.5625.
  CHECK(v.bound == doctest::Approx(0.5625).epsilon(1e-12));
  CHECK(v.ok());  // U_max = 0.5 <= 0.5625

  const TaskSet na = make(
      R"({"M":2,"tasks":[{"C":2,"T":4,"D":3},{"C":2,"T":4}]})");
  CHECK(grm_quadratic_test(na, 1).outcome == Outcome::NotApplicable);

  const TaskSet wrong_order = make(
      R"({"M":2,"tasks":[{"C":1,"T":8},{"C":1,"T":4}]})");
  CHECK(grm_quadratic_test(wrong_order, 1).outcome == Outcome::NotApplicable);
}

TEST_CASE("global rate-monotonic utilization test") {
  const TaskSet accept = make(
      R"({"M":2,"tasks":[{"C":1,"T":10},{"C":1,"T":10},{"C":1,"T":10}]})");
  const Verdict a = grm_util_test(accept, 2);
  CHECK(a.condition == "grm-utilization");
  CHECK(a.bound ==
        doctest::Approx((2.0 / 3.0) * (2.0 - std::sqrt(2.3))).epsilon(1e-12));
  CHECK(a.ok());  // 0.2/2 = 0.1 below the threshold

  const TaskSet reject = make(
      R"({"M":2,"tasks":[{"C":3,"T":10},{"C":3,"T":10},{"C":2,"T":10}]})");
  const Verdict b = grm_util_test(reject, 2);
  CHECK(b.bound ==
        doctest::Approx((2.0 / 3.0) * (2.0 - std::sqrt(2.9))).epsilon(1e-12));
  CHECK_FALSE(b.ok());  // 0.6/2 = 0.3 over the threshold

  CHECK_THROWS_AS(grm_util_test(accept, 0), std::invalid_argument);
}

TEST_CASE("capacity fixed point and factor") {
  const double root = grm_capacity_root();
  CHECK(root == doctest::Approx(3.0 - std::sqrt(7.0)).epsilon(1e-9));
  CHECK(root == doctest::Approx(2.0 - std::sqrt(2.0 + 2.0 * root)).epsilon(1e-9));
  CHECK(grm_capacity_factor() ==
        doctest::Approx((3.0 + std::sqrt(7.0)) / 2.0).epsilon(1e-9));
}

TEST_CASE("global deadline-monotonic quadratic test") {
  const TaskSet ts = make(
      R"({"M":2,"tasks":[{"C":1,"T":5},{"C":1,"T":4},{"C":3,"T":12,"D":10}]})");
  const Verdict v = gdm_quadratic_test(ts, 2);
  CHECK(v.condition == "gdm-quadratic");
  // HP by nonincreasing period (5 then 4):
  // 1 - (0.2+0.25)/2 - [(0.5 - 0.1*1) + (0.5 - 0.125*0.5)]/10 = 0.69125.
  CHECK(v.bound == doctest::Approx(0.69125).epsilon(1e-12));
  CHECK(v.ok());  // Delta_max = 0.3

  const TaskSet arb = make(
      R"({"M":2,"tasks":[{"C":1,"T":4},{"C":1,"T":3,"D":5}]})");
  CHECK(gdm_quadratic_test(arb, 1).outcome == Outcome::NotApplicable);
}

TEST_CASE("speedup witness names a term above one third") {
  const TaskSet dense = make(
      R"({"M":2,"tasks":[{"C":4,"T":10},{"C":4,"T":10},{"C":5,"T":10,"D":7}]})");
  REQUIRE_FALSE(gdm_quadratic_test(dense, 2).ok());
  CHECK(gdm_speedup_witness(dense, 2) == SpeedupWitness::Delta);

  const TaskSet loaded = make(
      R"({"M":2,"tasks":[{"C":3,"T":10},{"C":3,"T":10},{"C":3,"T":10},
                          {"C":3,"T":10},{"C":2,"T":10}]})");
  REQUIRE_FALSE(gdm_quadratic_test(loaded, 4).ok());
  CHECK(gdm_speedup_witness(loaded, 4) == SpeedupWitness::Utilization);

  const TaskSet spiky = make(
      R"({"M":2,"tasks":[{"C":3,"T":30,"D":4},{"C":3,"T":30,"D":4},
                          {"C":3,"T":30,"D":4},{"C":3,"T":30,"D":4},
                          {"C":2,"T":30,"D":8}]})");
  REQUIRE_FALSE(gdm_quadratic_test(spiky, 4).ok());
  CHECK(gdm_speedup_witness(spiky, 4) == SpeedupWitness::Density);

  const TaskSet fine = make(
      R"({"M":2,"tasks":[{"C":1,"T":10},{"C":1,"T":10}]})");
  REQUIRE(gdm_quadratic_test(fine, 1).ok());
  CHECK_THROWS_AS(gdm_speedup_witness(fine, 1), std::logic_error);
  CHECK(std::string(witness_name(SpeedupWitness::Delta)) == "delta");
}

TEST_CASE("one processor reduces to the uniform forms") {
  const TaskSet ts = make(
      R"({"tasks":[{"C":1,"T":4},{"C":2,"T":6},{"C":1,"T":12}]})");
  const Verdict grm = grm_quadratic_test(ts, 2);
  const double nested = uniform_quadratic_rhs_nested(
      {ts.tasks[0].utilization(), ts.tasks[1].utilization()}, 1.0, 1.0);
  CHECK(grm.bound == doctest::Approx(nested).epsilon(1e-12));
}
