#include "k2q/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "k2q/kpoint.hpp"
#include "k2q/multiproc.hpp"
#include "k2q/oracles.hpp"
#include "k2q/sim.hpp"
#include "k2q/task.hpp"
#include "k2q/uniproc.hpp"
#include "k2q/workload.hpp"

namespace k2q::verify {

namespace {

constexpr std::size_t kMaxStoredViolations = 8;

void flag(SuiteResult& r, std::string what, std::string instance) {
  if (r.violations.size() < kMaxStoredViolations)
    r.violations.push_back({std::move(what), std::move(instance)});
  else if (r.violations.size() == kMaxStoredViolations)
    r.violations.push_back({"further violations suppressed", ""});
}

void note(SuiteResult& r, const std::string& text) { r.notes.push_back(text); }

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

std::string describe(const TaskSet& ts, std::size_t k) {
  return "k=" + std::to_string(k) + " " + to_json(ts);
}

long long pick(const Options& o, long long dflt) {
  return o.count > 0 ? o.count : dflt;
}

// Uniprocessor corpus shared by the safety and dominance suites: small sets,
// integer parameters, total utilization kept at or below one, deadline
// ratios alternating between a constrained and an arbitrary band.
TaskSet uni_corpus_set(const Options& o, long long trial) {
  std::mt19937_64 g(mix_seed(o.seed, 0x75ab, static_cast<std::uint64_t>(trial)));
  GenConfig cfg;
  cfg.n = 1 + static_cast<int>(g() % 10);
  cfg.total_util = std::min(1.0, 0.3 + 0.75 * u01(g));
  cfg.period_min = 1;
  cfg.period_max = 1000;
  if (trial % 2 == 0) {
    cfg.ratio_min = 0.5;
    cfg.ratio_max = 1.0;
  } else {
    cfg.ratio_min = 1.0;
    cfg.ratio_max = 4.0;
  }
  cfg.processors = 1;
  cfg.integer_mode = true;
  cfg.policy = Policy::RateMonotonic;
  cfg.seed = mix_seed(o.seed, 0x5e7, static_cast<std::uint64_t>(trial));
  return gen_taskset(cfg);
}

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
  if (rate > 0.98)
    for (KEntry& e : inst.entries) e.u *= 0.98 / rate;
  double demand = 0;
  for (const KEntry& e : inst.entries) demand += e.beta * e.c;
  inst.tk = demand * (1.0 + 2.0 * u01(g)) + 0.1;
  inst.ck = 0.5 * inst.tk * u01(g);
  return inst;
}

std::string instance_json(const KPointInstance& inst) {
  std::ostringstream os;
  os.precision(17);
  os << "{\"tk\":" << inst.tk << ",\"ck\":" << inst.ck << ",\"entries\":[";
  for (std::size_t i = 0; i < inst.entries.size(); ++i) {
    const KEntry& e = inst.entries[i];
    os << (i ? "," : "") << "[" << e.alpha << "," << e.beta << "," << e.c
       << "," << e.u << "]";
  }
  os << "]}";
  return os.str();
}

double bini_bound(const TaskSet& ts, std::size_t k) {
  double su = 0, sc = 0, suc = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const double u = ts.tasks[i].utilization();
    su += u;
    sc += ts.tasks[i].wcet;
    suc += u * ts.tasks[i].wcet;
  }
  return (ts.tasks[k].wcet + sc - suc) / (1.0 - su);
}

void suite_constants(const Options&, SuiteResult& r) {
  struct Check {
    const char* what;
    double got, want, tol;
  };
  const double root = grm_capacity_root();
  const Check checks[] = {
      {"k-large exclusive threshold at full slack",
       *util_bound_exclusive(1'000'000, 1.0, 1.0, 0.0), 2.0 - std::sqrt(2.0),
       1e-6},
      {"k-large inclusive threshold", *util_bound_inclusive(1'000'000, 1.0, 1.0),
       2.0 - std::sqrt(2.0), 1e-5},
      {"k-large inclusive threshold, demand tied to rate",
       *util_bound_inclusive_beta(1'000'000, 1.0, 1.0), 2.0 - std::sqrt(2.0),
       1e-5},
      {"k-large inclusive threshold at half deadline",
       *util_bound_inclusive_beta(1'000'000, 1.0, 2.0),
       (3.0 - std::sqrt(5.0)) / 2.0, 1e-5},
      {"capacity fixed point", root, 3.0 - std::sqrt(7.0), 1e-9},
      {"fixed point residual", root - (2.0 - std::sqrt(2.0 + 2.0 * root)), 0.0,
       1e-9},
      {"capacity augmentation factor", grm_capacity_factor(),
       (3.0 + std::sqrt(7.0)) / 2.0, 1e-6},
  };
  for (const Check& c : checks) {
    ++r.checked;
    if (!(std::fabs(c.got - c.want) <= c.tol))
      flag(r, std::string(c.what) + ": got " + fmt(c.got) + ", want " +
              fmt(c.want), "");
    note(r, std::string(c.what) + " = " + fmt(c.got));
  }
}

void suite_identity(const Options& o, SuiteResult& r) {
  const long long n = pick(o, 10000);
  std::mt19937_64 g(mix_seed(o.seed, 0x1d, 0));
  for (long long t = 0; t < n; ++t) {
    const int m = static_cast<int>(g() % 8);
    std::vector<double> u;
    for (int i = 0; i < m; ++i) u.push_back(0.001 + 0.999 * u01(g));
    const double alpha = 0.5 + 1.5 * u01(g);
    const double beta = 0.5 + 1.5 * u01(g);
    const double nested = uniform_quadratic_rhs_nested(u, alpha, beta);
    const double closed = uniform_quadratic_rhs_closed(u, alpha, beta);
    ++r.checked;
    if (!(std::fabs(nested - closed) <= 1e-12 * std::max(1.0, std::fabs(closed))))
      flag(r, "nested and closed right-hand sides disagree: " + fmt(nested) +
              " vs " + fmt(closed), "");
  }
}

void suite_lp(const Options& o, SuiteResult& r) {
  const long long n = pick(o, 1000);
  std::mt19937_64 g(mix_seed(o.seed, 0x19, 0));
  for (long long t = 0; t < n; ++t) {
    const KPointInstance inst = random_instance(g, static_cast<int>(g() % 6));
    const Verdict v = quadratic_bound_general(inst);
    ++r.checked;
    if (v.outcome == Outcome::NotApplicable) {
      flag(r, "generated instance misses the closed form's hypotheses",
           instance_json(inst));
      continue;
    }
    const double closed_ck = v.bound * inst.tk;
    const double lp = oracles::lp_min_ck(inst);
    if (!(std::fabs(closed_ck - lp) <= 1e-9 * inst.tk))
      flag(r, "closed form " + fmt(closed_ck) + " != vertex minimum " + fmt(lp),
           instance_json(inst));
  }
}

void suite_ordering(const Options& o, SuiteResult& r) {
  const long long n = pick(o, 500);
  std::mt19937_64 g(mix_seed(o.seed, 0x0d, 0));
  for (long long t = 0; t < n; ++t) {
    KPointInstance inst = random_instance(g, 2 + static_cast<int>(g() % 6));

    KPointInstance sorted_sched = inst;
    sorted_sched.entries = worst_case_ordering_sched(inst.entries);
    const double mine = quadratic_bound_general(sorted_sched).bound;
    const auto best =
        oracles::permutation_minmax(inst.entries, inst.ck, inst.tk,
                                    oracles::PermObjective::SchedRhs);
    ++r.checked;
    if (!(std::fabs(mine - best.value) <= 1e-12 * std::max(1.0, std::fabs(best.value))))
      flag(r, "sorted order misses the minimum right-hand side: " + fmt(mine) +
              " vs " + fmt(best.value), instance_json(inst));

    KPointInstance sorted_resp = inst;
    sorted_resp.entries = worst_case_ordering_response(inst.entries);
    const ResponseBound rb = response_bound_general(sorted_resp);
    const auto worst =
        oracles::permutation_minmax(inst.entries, inst.ck, inst.tk,
                                    oracles::PermObjective::ResponseValue);
    ++r.checked;
    if (rb.unbounded ||
        !(std::fabs(rb.value - worst.value) <=
          1e-12 * std::max(1.0, std::fabs(worst.value))))
      flag(r, "sorted order misses the maximum response value: " +
              fmt(rb.value) + " vs " + fmt(worst.value), instance_json(inst));
  }
}

void suite_scale(const Options& o, SuiteResult& r) {
  const long long n = pick(o, 1000);
  std::mt19937_64 g(mix_seed(o.seed, 0x5c, 0));
  const double lambdas[] = {1e-3, 0.5, 3.0, 1e4};
  for (long long t = 0; t < n; ++t) {
    const KPointInstance inst = random_instance(g, static_cast<int>(g() % 7));
    const double lambda = lambdas[t % 4];

    KPointInstance scaled = inst;
    scaled.ck *= lambda;
    scaled.tk *= lambda;
    for (KEntry& e : scaled.entries) e.c *= lambda;

    const Verdict a = quadratic_bound_general(inst);
    const Verdict b = quadratic_bound_general(scaled);
    ++r.checked;
    if (a.outcome != b.outcome ||
        (a.outcome != Outcome::NotApplicable &&
         !(std::fabs(a.bound - b.bound) <= 1e-9 * std::max(1.0, std::fabs(a.bound)))))
      flag(r, "scaling all demands by " + fmt(lambda) +
              " changed the normalized verdict", instance_json(inst));

    const ResponseBound ra = response_bound_general(inst);
    const ResponseBound rb = response_bound_general(scaled);
    ++r.checked;
    if (ra.unbounded != rb.unbounded ||
        (!ra.unbounded &&
         !(std::fabs(rb.value - lambda * ra.value) <=
           1e-9 * std::max(1.0, lambda * ra.value))))
      flag(r, "response bound did not scale linearly", instance_json(inst));
  }
}

void suite_implication_exclusive(const Options& o, SuiteResult& r) {
  const long long n = pick(o, 4000);
  std::mt19937_64 g(mix_seed(o.seed, 0x1e, 0));
  for (long long t = 0; t < n; ++t) {
    const long long k = 2 + static_cast<long long>(g() % 29);
    const double alpha = 0.5 + 1.5 * u01(g);
    const double beta_any = 0.5 + 1.5 * u01(g);
    const double beta_sum1 = std::max(0.5, 1.01 - alpha) + u01(g) * 1.0;
    const double rr = u01(g);

    auto sample_vector = [&](int len, double target) {
      std::vector<double> u(len);
      double s = 0;
      for (double& x : u) {
        x = 0.01 + u01(g);
        s += x;
      }
      for (double& x : u) x *= target / s;
      for (double x : u)
        if (x > 1.0 || !(x > 0)) return std::vector<double>{};
      return u;
    };

    if (auto excl = util_bound_exclusive(k, alpha, beta_any, rr);
        excl && *excl > 1e-6) {
      const auto u = sample_vector(static_cast<int>(k - 1), *excl * u01(g));
      if (!u.empty()) {
        ++r.checked;
        if (!quadratic_bound_uniform(u, alpha, beta_any, rr).ok())
          flag(r, "total below the exclusive threshold but the quadratic "
                  "condition fails", instance_json({{}, rr, 1.0}) +
                  " alpha=" + fmt(alpha) + " beta=" + fmt(beta_any) +
                  " k=" + std::to_string(k));
      }
    }

    if (auto incl = util_bound_inclusive(k, alpha, beta_sum1);
        incl && *incl > 1e-6) {
      const double total = *incl * u01(g);
      const double ck_share = total * u01(g);
      const auto u = sample_vector(static_cast<int>(k - 1), total - ck_share);
      if (!u.empty() && ck_share <= 1.0) {
        ++r.checked;
        if (!quadratic_bound_uniform(u, alpha, beta_sum1, ck_share).ok())
          flag(r, "split below the inclusive threshold but the quadratic "
                  "condition fails",
               "alpha=" + fmt(alpha) + " beta=" + fmt(beta_sum1) +
                   " k=" + std::to_string(k) + " ck/tk=" + fmt(ck_share));
      }
    }

    if (auto inclb = util_bound_inclusive_beta(k, alpha, beta_sum1);
        inclb && *inclb > 1e-6) {
      const auto u = sample_vector(static_cast<int>(k), *inclb * u01(g));
      if (!u.empty()) {
        std::vector<double> hp(u.begin(), u.end() - 1);
        ++r.checked;
        if (!quadratic_bound_uniform(hp, alpha, beta_sum1, beta_sum1 * u.back())
                 .ok())
          flag(r, "total below the rate-tied inclusive threshold but the "
                  "quadratic condition fails",
               "alpha=" + fmt(alpha) + " beta=" + fmt(beta_sum1) +
                   " k=" + std::to_string(k) + " uk=" + fmt(u.back()));
      }
    }
  }
}

void suite_convergence(const Options&, SuiteResult& r) {
  const std::pair<double, double> frames[] = {
      {1.0, 1.0}, {0.5, 1.5}, {2.0, 1.0}, {0.7, 0.7}, {2.0, 2.0}};
  const double ratios[] = {0.0, 0.3, 0.9};

  auto check_sequence = [&](const std::string& what,
                            const std::function<double(long long)>& f,
                            double limit) {
    ++r.checked;
    double prev = f(2);
    int dir = 0;  // +1 rising toward the limit, -1 falling
    for (long long k = 4; k <= (1LL << 20); k *= 2) {
      const double cur = f(k);
      if (dir == 0 && cur != prev) dir = cur > prev ? 1 : -1;
      if ((dir > 0 && cur < prev - 1e-12) || (dir < 0 && cur > prev + 1e-12)) {
        flag(r, what + ": sequence not monotone at k=" + std::to_string(k) +
                " (" + fmt(prev) + " -> " + fmt(cur) + ")", "");
        return;
      }
      prev = cur;
    }
    if (!(std::fabs(prev - limit) < 1e-5))
      flag(r, what + ": final value " + fmt(prev) + " misses the limit " +
              fmt(limit), "");
  };

  for (const auto& [alpha, beta] : frames) {
    const std::string frame =
        "alpha=" + fmt(alpha) + " beta=" + fmt(beta);
    for (double rr : ratios) {
      check_sequence(
          "exclusive threshold " + frame + " r=" + fmt(rr),
          [&](long long k) { return *util_bound_exclusive(k, alpha, beta, rr); },
          (alpha + beta -
           std::sqrt(alpha * alpha + beta * beta + 2 * alpha * beta * rr)) /
              (alpha * beta));
    }
    if (alpha + beta >= 1.0) {
      const double root_limit =
          (alpha + beta - std::sqrt(alpha * alpha + beta * beta)) /
          (alpha * beta);
      // With alpha^2 + beta^2 < 1 the interior minimizer stays feasible for
      // every k, so the threshold converges to its value instead.
      const double s = alpha + beta;
      const double inclusive_limit =
          (alpha * alpha + beta * beta > 1.0)
              ? root_limit
              : 1.0 - (s - 1.0) * (s - 1.0) / (2.0 * alpha * beta);
      check_sequence(
          "inclusive threshold " + frame,
          [&](long long k) { return *util_bound_inclusive(k, alpha, beta); },
          inclusive_limit);
      check_sequence(
          "rate-tied inclusive threshold " + frame,
          [&](long long k) { return *util_bound_inclusive_beta(k, alpha, beta); },
          root_limit);
    }
  }
}

void suite_safety(const Options& o, SuiteResult& r) {
  const long long n = pick(o, 10000);
  long long discards = 0, accepts = 0;
  for (long long t = 0; t < n; ++t) {
    const TaskSet ts = uni_corpus_set(o, t);
    for (std::size_t k = 0; k < ts.size(); ++k) {
      const Verdict verdicts[] = {window_quadratic_test(ts, k),
                                  response_sched_test(ts, k),
                                  rm_util_bounds(ts, k).verdict};
      bool any = false;
      for (const Verdict& v : verdicts) any = any || v.ok();
      ++r.checked;
      if (!any) continue;
      ++accepts;
      try {
        const auto exact = oracles::busy_window_exact(ts, k);
        if (!exact.bounded ||
            static_cast<double>(exact.wcrt) > ts.tasks[k].deadline) {
          std::string which;
          for (const Verdict& v : verdicts)
            if (v.ok()) which += v.condition + " ";
          flag(r, which + "accepted but the exact response " +
                  std::to_string(exact.wcrt) + " exceeds the deadline",
               describe(ts, k));
        }
      } catch (const oracles::OracleError&) {
        ++discards;
      }
    }
  }
  note(r, "accepted task checks: " + std::to_string(accepts));
  note(r, "oracle discards: " + std::to_string(discards));
}

void suite_response_dominance(const Options& o, SuiteResult& r) {
  const long long n = pick(o, 10000);
  long long discards = 0, skipped = 0, big_sets = 0, strict_sets = 0;
  for (long long t = 0; t < n; ++t) {
    const TaskSet ts = uni_corpus_set(o, t);
    for (std::size_t k = 0; k < ts.size(); ++k) {
      const auto wb = wcrt_bound(ts, k);
      if (!wb || wb->unbounded) {
        ++skipped;
        continue;
      }
      ++r.checked;
      try {
        const auto exact = oracles::busy_window_exact(ts, k);
        if (exact.bounded &&
            wb->value < static_cast<double>(exact.wcrt) -
                            1e-9 * std::max(1.0, static_cast<double>(exact.wcrt)))
          flag(r, "response bound " + fmt(wb->value) +
                  " undercuts the exact response " + std::to_string(exact.wcrt),
               describe(ts, k));
      } catch (const oracles::OracleError&) {
        ++discards;
      }
      const double bini = bini_bound(ts, k);
      if (wb->value > bini + 1e-9 * std::max(1.0, bini))
        flag(r, "response bound " + fmt(wb->value) +
                " exceeds the additive reference bound " + fmt(bini),
             describe(ts, k));
      if (k == ts.size() - 1 && ts.size() >= 3) {
        ++big_sets;
        if (wb->value < bini - 1e-9 * std::max(1.0, bini)) ++strict_sets;
      }
    }
  }
  const double fraction =
      big_sets ? static_cast<double>(strict_sets) / big_sets : 0.0;
  note(r, "strict improvement fraction over sets with three or more tasks: " +
           fmt(fraction));
  note(r, "skipped (utilization above one after rounding): " +
           std::to_string(skipped));
  note(r, "oracle discards: " + std::to_string(discards));
  if (big_sets && fraction < 0.30)
    flag(r, "strict improvement fraction " + fmt(fraction) + " below 0.30", "");
}

void suite_h_dominance(const Options& o, SuiteResult& r) {
  const long long n = pick(o, 2000);
  for (long long t = 0; t < n; ++t) {
    const TaskSet ts = uni_corpus_set(o, t);
    for (std::size_t k = 0; k < ts.size(); ++k) {
      const auto wb = wcrt_bound(ts, k);
      if (!wb || wb->unbounded) continue;
      const double tk = ts.tasks[k].period;
      for (long long h = 1; h <= 10; ++h) {
        const ResponseBound rb = job_finish_bound(ts, k, h);
        if (rb.unbounded) break;
        ++r.checked;
        if (rb.value - static_cast<double>(h - 1) * tk >
            wb->value + 1e-9 * std::max(1.0, wb->value))
          flag(r, "job " + std::to_string(h) +
                  " response exceeds the first-job bound", describe(ts, k));
        try {
          const long long exact = oracles::busy_window_job_finish(ts, k, h);
          if (rb.value < static_cast<double>(exact) -
                             1e-9 * std::max(1.0, static_cast<double>(exact)))
            flag(r, "job " + std::to_string(h) + " finish bound " +
                    fmt(rb.value) + " undercuts the exact finish " +
                    std::to_string(exact), describe(ts, k));
        } catch (const oracles::OracleError&) {
        }
      }
    }
  }
}

void suite_specialization(const Options& o, SuiteResult& r) {
  const long long n = pick(o, 10000);
  long long accepts = 0;
  for (long long t = 0; t < n; ++t) {
    const TaskSet ts = uni_corpus_set(o, t);
    for (std::size_t k = 0; k < ts.size(); ++k) {
      const RmUtilBounds rb = rm_util_bounds(ts, k);
      ++r.checked;
      if (!rb.verdict.ok()) continue;
      ++accepts;
      if (!response_sched_test(ts, k).ok())
        flag(r, "utilization threshold accepts but the response-form test "
                "rejects", describe(ts, k));
    }
  }
  note(r, "threshold accepts: " + std::to_string(accepts));
}

TaskSet global_corpus_set(const Options& o, long long trial, double lo,
                          double span, double ratio_min, double ratio_max,
                          Policy policy, double period_min) {
  std::mt19937_64 g(mix_seed(o.seed, 0x91, static_cast<std::uint64_t>(trial)));
  GenConfig cfg;
  cfg.processors = trial % 2 == 0 ? 2 : 4;
  cfg.n = 2 * cfg.processors +
          static_cast<int>(g() % (2 * cfg.processors + 1));
  cfg.total_util = cfg.processors * (lo + span * u01(g));
  cfg.period_min = period_min;
  cfg.period_max = 1000;
  cfg.ratio_min = ratio_min;
  cfg.ratio_max = ratio_max;
  cfg.integer_mode = true;
  cfg.policy = policy;
  cfg.seed = mix_seed(o.seed, 0x92, static_cast<std::uint64_t>(trial));
  return gen_taskset(cfg);
}

void suite_grm_implication(const Options& o, SuiteResult& r) {
  const long long n = pick(o, 10000);
  long long accepts = 0;
  for (long long t = 0; t < n; ++t) {
    const TaskSet ts = global_corpus_set(o, t, 0.1, 0.5, 1.0, 1.0,
                                         Policy::RateMonotonic, 1);
    for (std::size_t k = 1; k < ts.size(); ++k) {
      ++r.checked;
      if (!grm_util_test(ts, k).ok()) continue;
      ++accepts;
      if (!grm_quadratic_test(ts, k).ok())
        flag(r, "utilization form accepts but the quadratic form rejects",
             describe(ts, k));
    }
  }
  note(r, "utilization-form accepts: " + std::to_string(accepts));
}

void suite_bertogna_grid(const Options& o, SuiteResult& r) {
  const long long n = pick(o, 10000);
  for (long long i = 0; i < n; ++i) {
    const double x = static_cast<double>(i) / static_cast<double>(n - 1);
    ++r.checked;
    if (2.0 - std::sqrt(2.0 + 2.0 * x) < (1.0 - x) / 2.0 - 1e-12)
      flag(r, "reference utilization curve exceeds ours at x=" + fmt(x), "");
  }
}

void suite_falsification(const Options& o, SuiteResult& r) {
  const long long target = pick(o, 1000);
  long long accepted = 0, inconclusive = 0, attempts = 0;
  const long long attempt_cap = std::max<long long>(200000, target * 200);

  for (long long t = 0; accepted < target && attempts < attempt_cap; ++t) {
    ++attempts;
    TaskSet ts = global_corpus_set(o, t, 0.1, 0.35, 1.0, 1.0,
                                   Policy::RateMonotonic, 10);
    if (t % 2 == 0) {
      // Snap periods to divisors of 1000 so the hyperperiod fits the horizon
      // and the run is conclusive; the other half keeps free periods.
      static const long long grid[] = {10, 20, 25, 40, 50, 100, 125, 200, 250, 500, 1000};
      for (Task& task : ts.tasks) {
        long long bestp = grid[0];
        for (long long p : grid)
          if (std::fabs(static_cast<double>(p) - task.period) <
              std::fabs(static_cast<double>(bestp) - task.period))
            bestp = p;
        const double u = task.utilization();
        task.period = static_cast<double>(bestp);
        task.deadline = task.period;
        task.wcet = std::max(1.0, std::floor(u * task.period));
      }
      ts = assign_priorities(std::move(ts), Policy::RateMonotonic);
    }

    bool all_ok = true;
    for (std::size_t k = 0; k < ts.size() && all_ok; ++k)
      all_ok = grm_quadratic_test(ts, k).ok();
    if (!all_ok) continue;

    ++accepted;
    ++r.checked;
    oracles::SimOptions so;
    so.horizon_cap = o.horizon_cap;
    so.stop_at_first_miss = true;
    const long long horizon = oracles::hyperperiod_capped(ts, o.horizon_cap);
    const auto res = oracles::simulate_global_fp(ts, horizon, so);
    if (res.misses > 0)
      flag(r, "accepted set misses a deadline at tick " +
              std::to_string(res.first_miss_time) + " (task index " +
              std::to_string(res.first_miss_task) + ")", to_json(ts));
    else if (!res.hyperperiod_covered)
      ++inconclusive;
  }
  note(r, "accepted sets simulated: " + std::to_string(accepted) + " of " +
           std::to_string(attempts) + " attempts");
  note(r, "inconclusive (horizon capped before the hyperperiod): " +
           std::to_string(inconclusive));
  if (accepted < target)
    flag(r, "generator produced only " + std::to_string(accepted) +
            " accepted sets of the requested " + std::to_string(target), "");
}

void suite_pigeonhole(const Options& o, SuiteResult& r) {
  const long long target = pick(o, 10000);
  long long rejects = 0;
  const long long attempt_cap = std::max<long long>(100000, target * 100);
  for (long long t = 0; rejects < target && t < attempt_cap; ++t) {
    const TaskSet ts = global_corpus_set(o, t, 0.55, 0.44, 0.5, 1.0,
                                         Policy::DeadlineMonotonic, 1);
    for (std::size_t k = 0; k < ts.size(); ++k) {
      const Verdict v = gdm_quadratic_test(ts, k);
      if (v.outcome == Outcome::Schedulable) continue;
      ++r.checked;
      if (v.outcome == Outcome::NotProven) ++rejects;
      try {
        const SpeedupWitness w = gdm_speedup_witness(ts, k);
        const GlobalContext ctx = make_global_context(ts, k);
        double su = 0, sc = 0;
        for (std::size_t i = 0; i < k; ++i) {
          su += ts.tasks[i].utilization();
          sc += ts.tasks[i].wcet / ts.tasks[k].deadline;
        }
        const double val = w == SpeedupWitness::Delta ? ctx.delta_max
                           : w == SpeedupWitness::Utilization
                               ? su / ctx.m
                               : sc / ctx.m;
        if (!(val > 1.0 / 3.0))
          flag(r, std::string("named witness ") + witness_name(w) +
                  " does not exceed one third: " + fmt(val), describe(ts, k));
      } catch (const std::logic_error& e) {
        flag(r, std::string("no witness for a rejected task: ") + e.what(),
             describe(ts, k));
      }
    }
  }
  note(r, "rejected-with-hypotheses tasks: " + std::to_string(rejects));
  if (rejects < target)
    flag(r, "generator produced only " + std::to_string(rejects) +
            " rejected tasks of the requested " + std::to_string(target), "");
}

void suite_sim_conservation(const Options& o, SuiteResult& r) {
  const long long n = pick(o, 300);
  for (long long t = 0; t < n; ++t) {
    std::mt19937_64 g(mix_seed(o.seed, 0x51, static_cast<std::uint64_t>(t)));
    GenConfig cfg;
    cfg.processors = 1 + static_cast<int>(g() % 3);
    cfg.n = 1 + static_cast<int>(g() % 6);
    cfg.total_util =
        (0.3 + 0.6 * u01(g)) * std::min<double>(cfg.n, cfg.processors);
    cfg.period_min = 2;
    cfg.period_max = 20;
    cfg.ratio_min = 0.5;
    cfg.ratio_max = 1.0;
    cfg.integer_mode = true;
    cfg.policy = Policy::DeadlineMonotonic;
    cfg.seed = mix_seed(o.seed, 0x52, static_cast<std::uint64_t>(t));
    const TaskSet ts = gen_taskset(cfg);

    oracles::SimOptions so;
    so.record_trace = true;
    so.horizon_cap = 20000;
    const long long horizon =
        oracles::hyperperiod_capped(ts, so.horizon_cap);
    const auto res = oracles::simulate_global_fp(ts, horizon, so);
    ++r.checked;

    // Per-task event history, replayed from the trace alone.
    const int ntasks = static_cast<int>(ts.size());
    std::vector<std::vector<long long>> rel(ntasks), fin(ntasks);
    std::map<std::pair<int, long long>, long long> rel_time;
    long long prev_time = 0;
    bool bad = false;
    for (const auto& e : res.trace.events) {
      if (e.time < prev_time) {
        flag(r, "events out of order", to_json(ts));
        bad = true;
        break;
      }
      prev_time = e.time;
      if (e.kind == oracles::EvKind::Release) {
        rel[e.task].push_back(e.time);
        rel_time[{e.task, e.job}] = e.time;
      }
      if (e.kind == oracles::EvKind::Finish) fin[e.task].push_back(e.time);
    }
    if (bad) continue;

    auto count_le = [](const std::vector<long long>& v, long long x) {
      return static_cast<long long>(
          std::upper_bound(v.begin(), v.end(), x) - v.begin());
    };

    // A miss means the finish is absent or late.
    for (const auto& e : res.trace.events) {
      if (e.kind != oracles::EvKind::Miss) continue;
      const long long dl =
          rel_time[{e.task, e.job}] +
          static_cast<long long>(ts.tasks[e.task].deadline);
      bool ok = true;
      const auto& f = fin[e.task];
      if (static_cast<std::size_t>(e.job) < f.size())
        ok = f[e.job] > dl;
      if (!ok) {
        flag(r, "miss recorded for a job that finished on time", to_json(ts));
        bad = true;
        break;
      }
    }
    if (bad) continue;

    long long prev_to = 0;
    for (const auto& seg : res.trace.segments) {
      if (seg.from < prev_to || seg.to <= seg.from) {
        flag(r, "segments overlap or run backwards", to_json(ts));
        bad = true;
        break;
      }
      // Idle gap: nothing may be pending when the processors go quiet.
      if (seg.from > prev_to) {
        for (int i = 0; i < ntasks; ++i) {
          if (count_le(rel[i], prev_to) > count_le(fin[i], prev_to)) {
            flag(r, "pending work left idle at tick " + std::to_string(prev_to),
                 to_json(ts));
            bad = true;
            break;
          }
        }
      }
      if (bad) break;

      std::vector<int> expected;
      for (int i = 0; i < ntasks; ++i)
        if (count_le(rel[i], seg.from) > count_le(fin[i], seg.from))
          expected.push_back(i);
      if (static_cast<int>(expected.size()) > ts.processors)
        expected.resize(ts.processors);
      if (seg.running != expected) {
        flag(r, "running set differs from the priority-ordered eligible "
                "prefix at tick " + std::to_string(seg.from), to_json(ts));
        bad = true;
        break;
      }
      prev_to = seg.to;
    }
    if (bad) continue;

    // Executed time per task stays between completed and released demand.
    std::vector<long long> exec(ntasks, 0);
    for (const auto& seg : res.trace.segments)
      for (int i : seg.running) exec[i] += seg.to - seg.from;
    for (int i = 0; i < ntasks; ++i) {
      const long long c = static_cast<long long>(ts.tasks[i].wcet);
      if (exec[i] < c * static_cast<long long>(fin[i].size()) ||
          exec[i] > c * static_cast<long long>(rel[i].size())) {
        flag(r, "executed time does not match the job accounting", to_json(ts));
        break;
      }
    }
  }
}

void suite_oracle_agreement(const Options& o, SuiteResult& r) {
  const long long n = pick(o, 3000);
  long long discards = 0;
  for (long long t = 0; t < n; ++t) {
    const TaskSet ts = uni_corpus_set(o, 2 * t);  // even trials: constrained
    for (std::size_t k = 0; k < ts.size(); ++k) {
      ++r.checked;
      try {
        const Verdict tda = oracles::tda_exact(ts, k);
        const auto bw = oracles::busy_window_exact(ts, k);
        const bool bw_ok =
            bw.bounded && static_cast<double>(bw.wcrt) <= ts.tasks[k].deadline;
        if (tda.ok() != bw_ok)
          flag(r, std::string("fixed-point and busy-window oracles disagree: ") +
                  outcome_name(tda.outcome) + " vs exact response " +
                  (bw.bounded ? std::to_string(bw.wcrt) : "unbounded"),
               describe(ts, k));
        else if (tda.ok() && tda.bound != static_cast<double>(bw.wcrt))
          flag(r, "oracles accept with different finishing times: " +
                  fmt(tda.bound) + " vs " + std::to_string(bw.wcrt),
               describe(ts, k));
      } catch (const oracles::OracleError&) {
        ++discards;
      }
    }
  }
  note(r, "oracle discards: " + std::to_string(discards));
}

void suite_generator(const Options& o, SuiteResult& r) {
  const long long n = pick(o, 500);
  for (long long t = 0; t < n; ++t) {
    std::mt19937_64 g(mix_seed(o.seed, 0x6e, static_cast<std::uint64_t>(t)));
    GenConfig cfg;
    cfg.n = 1 + static_cast<int>(g() % 10);
    cfg.total_util = 0.1 + 0.8 * u01(g);
    cfg.period_min = 1;
    cfg.period_max = 1000;
    cfg.integer_mode = t % 3 != 2;
    cfg.processors = 1 + static_cast<int>(g() % 4);
    switch (t % 3) {
      case 0: cfg.ratio_min = 1.0; cfg.ratio_max = 1.0; break;
      case 1: cfg.ratio_min = 0.5; cfg.ratio_max = 1.0; break;
      default: cfg.ratio_min = 1.0; cfg.ratio_max = 4.0; break;
    }
    cfg.policy = t % 2 == 0 ? Policy::RateMonotonic : Policy::DeadlineMonotonic;
    cfg.seed = mix_seed(o.seed, 0x6f, static_cast<std::uint64_t>(t));

    const auto u = uunifast(cfg.n, cfg.total_util, cfg.seed);
    double sum = 0;
    for (double x : u) sum += x;
    ++r.checked;
    if (!(std::fabs(sum - cfg.total_util) <= 1e-9) ||
        u != uunifast(cfg.n, cfg.total_util, cfg.seed))
      flag(r, "utilization split broke its sum or determinism", "");

    const TaskSet a = gen_taskset(cfg);
    const TaskSet b = gen_taskset(cfg);
    ++r.checked;
    if (to_json(a) != to_json(b)) {
      flag(r, "generator is not deterministic under a fixed seed", to_json(a));
      continue;
    }
    double realized = 0;
    bool integral = true, sorted = true;
    for (const Task& task : a.tasks) {
      realized += task.utilization();
      if (task.wcet != std::floor(task.wcet) ||
          task.period != std::floor(task.period) ||
          task.deadline != std::floor(task.deadline))
        integral = false;
    }
    for (std::size_t i = 1; i < a.size(); ++i) {
      if (cfg.policy == Policy::RateMonotonic &&
          a.tasks[i - 1].period > a.tasks[i].period)
        sorted = false;
      if (cfg.policy == Policy::DeadlineMonotonic &&
          a.tasks[i - 1].deadline > a.tasks[i].deadline)
        sorted = false;
    }
    if (cfg.integer_mode && !integral)
      flag(r, "integer mode produced fractional parameters", to_json(a));
    if (cfg.integer_mode && realized > cfg.total_util + 1e-12)
      flag(r, "integer mode exceeded the target utilization", to_json(a));
    if (!cfg.integer_mode && std::fabs(realized - cfg.total_util) > 1e-9)
      flag(r, "real mode missed the target utilization", to_json(a));
    if (!sorted) flag(r, "priorities not ordered by the requested policy",
                      to_json(a));
    if (cfg.ratio_min == 1.0 && cfg.ratio_max == 1.0 &&
        a.model() != DeadlineModel::Implicit)
      flag(r, "unit deadline ratio did not give an implicit set", to_json(a));
    if (cfg.integer_mode && cfg.ratio_max <= 1.0 &&
        a.model() == DeadlineModel::Arbitrary)
      flag(r, "constrained ratio range gave an arbitrary-deadline set",
           to_json(a));
  }
}

void suite_reduction_m1(const Options& o, SuiteResult& r) {
  const long long n = pick(o, 2000);
  for (long long t = 0; t < n; ++t) {
    std::mt19937_64 g(mix_seed(o.seed, 0xa1, static_cast<std::uint64_t>(t)));
    GenConfig cfg;
    cfg.n = 2 + static_cast<int>(g() % 6);
    cfg.total_util = 0.2 + 0.7 * u01(g);
    cfg.period_min = 1;
    cfg.period_max = 1000;
    cfg.ratio_min = t % 2 == 0 ? 1.0 : 0.5;
    cfg.ratio_max = 1.0;
    cfg.processors = 1;
    cfg.integer_mode = true;
    cfg.policy = Policy::RateMonotonic;
    cfg.seed = mix_seed(o.seed, 0xa2, static_cast<std::uint64_t>(t));
    const TaskSet ts = gen_taskset(cfg);

    for (std::size_t k = 0; k < ts.size(); ++k) {
      if (ts.model() == DeadlineModel::Implicit) {
        const Verdict grm = grm_quadratic_test(ts, k);
        std::vector<double> u;
        for (std::size_t i = 0; i < k; ++i)
          u.push_back(ts.tasks[i].utilization());
        const double nested = uniform_quadratic_rhs_nested(u, 1.0, 1.0);
        ++r.checked;
        if (!(std::fabs(grm.bound - nested) <= 1e-12 * std::max(1.0, std::fabs(nested))))
          flag(r, "single-processor reduction of the global rate test "
                  "disagrees with the uniform form", describe(ts, k));
      }
      const Verdict gdm = gdm_quadratic_test(ts, k);
      const Verdict cor = response_sched_test(ts, k);
      if (gdm.outcome != Outcome::NotApplicable &&
          cor.outcome != Outcome::NotApplicable) {
        ++r.checked;
        if (!(std::fabs(gdm.bound - cor.bound) <=
              1e-12 * std::max(1.0, std::fabs(cor.bound))))
          flag(r, "single-processor reduction of the global density test "
                  "disagrees with the response form", describe(ts, k));
        if (gdm.ok() && !cor.ok())
          flag(r, "global density test accepts where the response form "
                  "rejects on one processor", describe(ts, k));
      }
    }
  }
}

using SuiteFn = void (*)(const Options&, SuiteResult&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> reg = {
      {"constants", suite_constants},
      {"identity", suite_identity},
      {"lp", suite_lp},
      {"ordering", suite_ordering},
      {"scale", suite_scale},
      {"implication-exclusive", suite_implication_exclusive},
      {"convergence", suite_convergence},
      {"safety", suite_safety},
      {"response-dominance", suite_response_dominance},
      {"h-dominance", suite_h_dominance},
      {"specialization", suite_specialization},
      {"oracle-agreement", suite_oracle_agreement},
      {"reduction-m1", suite_reduction_m1},
      {"grm-implication", suite_grm_implication},
      {"bertogna-grid", suite_bertogna_grid},
      {"falsification", suite_falsification},
      {"pigeonhole", suite_pigeonhole},
      {"sim-conservation", suite_sim_conservation},
      {"generator", suite_generator},
  };
  return reg;
}

}  // namespace

SuiteResult run_suite(const std::string& name, const Options& opts) {
  for (const auto& [n, fn] : registry()) {
    if (n != name) continue;
    SuiteResult r;
    r.name = name;
    const auto start = std::chrono::steady_clock::now();
    fn(opts, r);
    r.seconds = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - start)
                    .count();
    return r;
  }
  throw std::invalid_argument("unknown suite \"" + name + "\"");
}

std::vector<std::string> suite_names() {
  std::vector<std::string> names;
  for (const auto& [n, fn] : registry()) names.push_back(n);
  return names;
}

}  // namespace k2q::verify
