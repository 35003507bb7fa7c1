#include <cmath>
#include <random>

#include "doctest.h"
#include "k2q/kpoint.hpp"
#include "k2q/multiproc.hpp"
#include "k2q/oracles.hpp"
#include "k2q/task.hpp"
#include "k2q/uniproc.hpp"
#include "k2q/workload.hpp"

using namespace k2q;

namespace {

KPointInstance random_instance(std::mt19937_64& g, int entries) {
  KPointInstance inst;
  double rate = 0;
  for (int i = 0; i < entries; ++i) {
    KEntry e;
    e.alpha = 0.5 + 1.5 * u01(g);
    e.beta = 0.5 + 1.5 * u01(g);
    e.c = 4.0 * u01(g);
    e.u = 0.05 + 0.95 * u01(g);
    rate += e.alpha * e.u;
    inst.entries.push_back(e);
  }
  if (rate > 0.95)
    for (KEntry& e : inst.entries) e.u *= 0.95 / rate;
  double demand = 0;
  for (const KEntry& e : inst.entries) demand += e.beta * e.c;
  inst.tk = demand * (1.0 + 2.0 * u01(g)) + 0.1;
  inst.ck = 0.5 * inst.tk * u01(g);
  return inst;
}

TaskSet random_uni_set(std::uint64_t seed, long long trial) {
  std::mt19937_64 g(mix_seed(seed, 0xBEEF, static_cast<std::uint64_t>(trial)));
  GenConfig cfg;
  cfg.n = 1 + static_cast<int>(g() % 6);
  cfg.total_util = std::min(1.0, 0.3 + 0.7 * u01(g));
  cfg.period_min = 1;
  cfg.period_max = 200;
  cfg.ratio_min = trial % 2 == 0 ? 0.5 : 1.0;
  cfg.ratio_max = trial % 2 == 0 ? 1.0 : 3.0;
  cfg.integer_mode = true;
  cfg.policy = Policy::RateMonotonic;
  cfg.seed = mix_seed(seed, 0xF00D, static_cast<std::uint64_t>(trial));
  return gen_taskset(cfg);
}

}  // namespace

TEST_CASE("nested and closed uniform forms are one function") {
  std::mt19937_64 g(2024);
  for (int t = 0; t < 200; ++t) {
    const int n = static_cast<int>(g() % 8);
    std::vector<double> u;
    for (int i = 0; i < n; ++i) u.push_back(0.001 + 0.999 * u01(g));
    const double alpha = 0.5 + 1.5 * u01(g);
    const double beta = 0.5 + 1.5 * u01(g);
    const double nested = uniform_quadratic_rhs_nested(u, alpha, beta);
    const double closed = uniform_quadratic_rhs_closed(u, alpha, beta);
    CHECK(std::fabs(nested - closed) <= 1e-12 * std::max(1.0, std::fabs(closed)));
  }
}

TEST_CASE("the closed form matches the vertex minimum") {
  std::mt19937_64 g(7);
  for (int t = 0; t < 100; ++t) {
    const KPointInstance inst = random_instance(g, static_cast<int>(g() % 6));
    const Verdict v = quadratic_bound_general(inst);
    REQUIRE(v.outcome != Outcome::NotApplicable);
    CHECK(std::fabs(v.bound * inst.tk - oracles::lp_min_ck(inst)) <=
          1e-9 * inst.tk);
  }
}

TEST_CASE("scaling demands and window together changes nothing") {
  std::mt19937_64 g(11);
  for (int t = 0; t < 100; ++t) {
    const KPointInstance inst = random_instance(g, static_cast<int>(g() % 6));
    KPointInstance scaled = inst;
    scaled.ck *= 1000;
    scaled.tk *= 1000;
    for (KEntry& e : scaled.entries) e.c *= 1000;
    const Verdict a = quadratic_bound_general(inst);
    const Verdict b = quadratic_bound_general(scaled);
    CHECK(a.outcome == b.outcome);
    CHECK(std::fabs(a.bound - b.bound) <= 1e-9 * std::max(1.0, std::fabs(a.bound)));
  }
}

TEST_CASE("sorted orderings beat every permutation") {
  std::mt19937_64 g(13);
  for (int t = 0; t < 50; ++t) {
    const KPointInstance inst = random_instance(g, 3 + static_cast<int>(g() % 3));

    KPointInstance sorted = inst;
    sorted.entries = worst_case_ordering_sched(inst.entries);
    const double mine = quadratic_bound_general(sorted).bound;
    const auto best = oracles::permutation_minmax(
        inst.entries, inst.ck, inst.tk, oracles::PermObjective::SchedRhs);
    CHECK(std::fabs(mine - best.value) <=
          1e-12 * std::max(1.0, std::fabs(best.value)));

    KPointInstance resp = inst;
    resp.entries = worst_case_ordering_response(inst.entries);
    const ResponseBound rb = response_bound_general(resp);
    const auto worst = oracles::permutation_minmax(
        inst.entries, inst.ck, inst.tk, oracles::PermObjective::ResponseValue);
    REQUIRE(rb.finite());
    CHECK(std::fabs(rb.value - worst.value) <=
          1e-12 * std::max(1.0, std::fabs(worst.value)));
  }
}

TEST_CASE("accepted tasks never miss under the exact oracle") {
  for (long long t = 0; t < 200; ++t) {
    const TaskSet ts = random_uni_set(5, t);
    for (std::size_t k = 0; k < ts.size(); ++k) {
      const bool any = window_quadratic_test(ts, k).ok() ||
                       response_sched_test(ts, k).ok() ||
                       rm_util_bounds(ts, k).verdict.ok();
      if (!any) continue;
      const auto exact = oracles::busy_window_exact(ts, k);
      REQUIRE(exact.bounded);
      CHECK(static_cast<double>(exact.wcrt) <= ts.tasks[k].deadline);
    }
  }
}

TEST_CASE("response bounds sandwich the exact response") {
  for (long long t = 0; t < 100; ++t) {
    const TaskSet ts = random_uni_set(17, t);
    for (std::size_t k = 0; k < ts.size(); ++k) {
      const auto wb = wcrt_bound(ts, k);
      if (!wb || wb->unbounded) continue;
      const auto exact = oracles::busy_window_exact(ts, k);
      REQUIRE(exact.bounded);
      CHECK(wb->value >=
            static_cast<double>(exact.wcrt) * (1.0 - 1e-12) - 1e-9);

      double su = 0, sc = 0, suc = 0;
      for (std::size_t i = 0; i < k; ++i) {
        su += ts.tasks[i].utilization();
        sc += ts.tasks[i].wcet;
        suc += ts.tasks[i].utilization() * ts.tasks[i].wcet;
      }
      const double additive = (ts.tasks[k].wcet + sc - suc) / (1.0 - su);
      CHECK(wb->value <= additive + 1e-9 * std::max(1.0, additive));
    }
  }
}

TEST_CASE("utilization thresholds never outrun the response test") {
  for (long long t = 0; t < 200; ++t) {
    const TaskSet ts = random_uni_set(23, t);
    for (std::size_t k = 0; k < ts.size(); ++k) {
      if (rm_util_bounds(ts, k).verdict.ok())
        CHECK(response_sched_test(ts, k).ok());
    }
  }
}

TEST_CASE("the shared capacity curve dominates the reference line") {
  for (int i = 0; i <= 1000; ++i) {
    const double x = i / 1000.0;
    CHECK(2.0 - std::sqrt(2.0 + 2.0 * x) >= (1.0 - x) / 2.0 - 1e-12);
  }
}

TEST_CASE("direct test with all points at the window end") {
  // With every point at tk the earliest point carries no demand prefix, so
  // the direct test reduces to ck + sum alpha_i tk u_i <= tk.
  std::mt19937_64 g(29);
  for (int t = 0; t < 50; ++t) {
    KPointInstance inst = random_instance(g, 1 + static_cast<int>(g() % 5));
    inst.entries = worst_case_ordering_sched(inst.entries);
    const std::vector<double> points(inst.entries.size() + 1, inst.tk);
    const Verdict direct = kpoint_test_direct(inst, points);
    double lhs = inst.ck;
    for (const KEntry& e : inst.entries) lhs += e.alpha * inst.tk * e.u;
    CHECK(direct.ok() == (lhs / inst.tk <= 1.0 + kRatioTol));
  }
}
