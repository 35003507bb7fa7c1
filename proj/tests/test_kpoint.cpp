#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "k2q/kpoint.hpp"

using namespace k2q;

namespace {

KPointInstance two_quarter_entries() {
  // Two identical contributions u = 1/4, c = 1, unit weights, window 10.
  KPointInstance inst;
  inst.entries = {{1, 1, 1, 0.25}, {1, 1, 1, 0.25}};
  inst.tk = 10;
  inst.ck = 3.75;
  return inst;
}

}  // namespace

TEST_CASE("direct point-wise test") {
  // Three tasks with unit weights; the first point already has slack:
  // ck + t_1 u_1 + t_2 u_2 = 0.5 + 2/6 + 3/6 < 2.
  KPointInstance inst;
  inst.entries = {{1, 1, 0.5, 0.5 / 2.0}, {1, 1, 0.5, 0.5 / 3.0}};
  inst.ck = 0.5;
  inst.tk = 3.5;
  const Verdict v = kpoint_test_direct(inst, {2.0, 3.0, 3.5});
  CHECK(v.ok());
  CHECK(v.condition == "kpoint-direct");

  // An infeasible demand fails every point.
  KPointInstance heavy = inst;
  heavy.ck = 3.4;
  CHECK_FALSE(kpoint_test_direct(heavy, {2.0, 3.0, 3.5}).ok());

  CHECK_THROWS_AS(kpoint_test_direct(inst, {2.0, 3.0}), std::invalid_argument);
  CHECK_THROWS_AS(kpoint_test_direct(inst, {3.0, 2.0, 3.5}),
                  std::invalid_argument);
}

TEST_CASE("general quadratic bound") {
  const KPointInstance inst = two_quarter_entries();
  const Verdict v = quadratic_bound_general(inst);
  CHECK(v.condition == "general-quadratic");
  // 1 - 1/2 - [(1 - 0.25*2) + (1 - 0.25*1)]/10 = 0.375.
  CHECK(v.bound == doctest::Approx(0.375).epsilon(1e-12));
  CHECK(v.ok());  // ck/tk = 0.375 sits exactly on the bound

  KPointInstance reject = inst;
  reject.ck = 3.8;
  CHECK_FALSE(quadratic_bound_general(reject).ok());
}

TEST_CASE("general quadratic bound hypotheses") {
  KPointInstance rate_heavy;
  rate_heavy.entries = {{2, 1, 1, 0.6}};  // alpha u = 1.2 > 1
  rate_heavy.ck = 0.1;
  rate_heavy.tk = 10;
  const Verdict v1 = quadratic_bound_general(rate_heavy);
  CHECK(v1.outcome == Outcome::NotApplicable);
  CHECK(v1.note.find("rate hypothesis") != std::string::npos);

  KPointInstance demand_heavy;
  demand_heavy.entries = {{1, 1, 20, 0.25}};  // beta c = 20 > tk
  demand_heavy.ck = 0.1;
  demand_heavy.tk = 10;
  const Verdict v2 = quadratic_bound_general(demand_heavy);
  CHECK(v2.outcome == Outcome::NotApplicable);
  CHECK(v2.note.find("demand hypothesis") != std::string::npos);

  KPointInstance degenerate;
  degenerate.ck = 1;
  degenerate.tk = 0;
  CHECK_THROWS_AS(quadratic_bound_general(degenerate), std::invalid_argument);
}

TEST_CASE("worst-case ordering sorts by demand-to-rate ratio") {
  const std::vector<KEntry> entries = {{1, 1, 2, 0.5}, {1, 1, 8, 0.5}};
  const auto sched = worst_case_ordering_sched(entries);
  REQUIRE(sched.size() == 2);
  CHECK(sched[0].c == 8);  // ratio 16 precedes ratio 4
  CHECK(sched[1].c == 2);
  const auto resp = worst_case_ordering_response(entries);
  CHECK(resp[0].c == 8);

  // Ties keep the input order.
  const std::vector<KEntry> tied = {{1, 1, 2, 0.25}, {1, 1, 2, 0.25}};
  const auto kept = worst_case_ordering_sched(tied);
  CHECK(kept[0].u == 0.25);
  CHECK(kept[1].u == 0.25);
}

TEST_CASE("uniform right-hand sides agree") {
  const std::vector<double> u = {0.25, 0.25};
  const double nested = uniform_quadratic_rhs_nested(u, 1, 1);
  const double closed = uniform_quadratic_rhs_closed(u, 1, 1);
  CHECK(nested == doctest::Approx(0.1875).epsilon(1e-12));
  CHECK(closed == doctest::Approx(0.1875).epsilon(1e-12));

  CHECK(uniform_quadratic_rhs_nested({0.5}, 1, 1) ==
        doctest::Approx(0.25).epsilon(1e-12));

  const Verdict ok = quadratic_bound_uniform(u, 1, 1, 0.1875);
  CHECK(ok.ok());
  CHECK(ok.condition == "uniform-quadratic");
  CHECK_FALSE(quadratic_bound_uniform(u, 1, 1, 0.19).ok());
}

TEST_CASE("exclusive utilization threshold") {
  // k large, full slack: the threshold approaches 2 - sqrt(2).
  CHECK(*util_bound_exclusive(1'000'000, 1, 1, 0) ==
        doctest::Approx(2.0 - std::sqrt(2.0)).epsilon(1e-4));
  // k = 2, half slack: (1/2)(2 - sqrt(2)).
  CHECK(*util_bound_exclusive(2, 1, 1, 0.5) ==
        doctest::Approx(1.0 - std::sqrt(2.0) / 2.0).epsilon(1e-12));
  // No slack at all leaves no room for interference.
  CHECK(*util_bound_exclusive(2, 1, 1, 1.0) ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK_THROWS_AS(util_bound_exclusive(1, 1, 1, 0), std::invalid_argument);
}

TEST_CASE("inclusive utilization threshold") {
  CHECK(*util_bound_inclusive(2, 1, 1) == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(*util_bound_inclusive(4, 1, 1) ==
        doctest::Approx(0.75 * (2.0 - std::sqrt(4.0 / 3.0))).epsilon(1e-12));
  CHECK(*util_bound_inclusive(1'000'000, 1, 1) ==
        doctest::Approx(2.0 - std::sqrt(2.0)).epsilon(1e-4));
  // The derivation needs alpha + beta >= 1.
  CHECK_FALSE(util_bound_inclusive(4, 0.3, 0.3).has_value());
  CHECK_THROWS_AS(util_bound_inclusive(1, 1, 1), std::invalid_argument);
}

TEST_CASE("rate-tied inclusive utilization threshold") {
  CHECK(*util_bound_inclusive_beta(2, 1, 1) ==
        doctest::Approx(0.75).epsilon(1e-12));
  CHECK(*util_bound_inclusive_beta(5, 1, 1) ==
        doctest::Approx(0.8 * (2.0 - std::sqrt(1.5))).epsilon(1e-12));
  CHECK(*util_bound_inclusive_beta(1'000'000, 1, 2) ==
        doctest::Approx((3.0 - std::sqrt(5.0)) / 2.0).epsilon(1e-4));
  CHECK_FALSE(util_bound_inclusive_beta(4, 0.3, 0.3).has_value());
  CHECK_THROWS_AS(util_bound_inclusive_beta(1, 1, 1), std::invalid_argument);
}

TEST_CASE("response bound") {
  KPointInstance inst;
  inst.entries = {{1, 1, 2, 0.5}};
  inst.ck = 1;
  const ResponseBound rb = response_bound_general(inst);
  REQUIRE(rb.finite());
  // (1 + 2 - 0.5*2) / (1 - 0.5) = 4.
  CHECK(rb.value == doctest::Approx(4.0).epsilon(1e-12));

  KPointInstance saturated;
  saturated.entries = {{1, 1, 1, 0.5}, {2, 1, 1, 0.25}};  // rate sums to 1
  saturated.ck = 1;
  CHECK(response_bound_general(saturated).infinite());
}
