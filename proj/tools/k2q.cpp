#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "k2q/kpoint.hpp"
#include "k2q/multiproc.hpp"
#include "k2q/oracles.hpp"
#include "k2q/sim.hpp"
#include "k2q/task.hpp"
#include "k2q/uniproc.hpp"
#include "k2q/verify.hpp"
#include "k2q/workload.hpp"

namespace {

using nlohmann::json;

json verdict_json(const k2q::Verdict& v) {
  json j;
  j["outcome"] = k2q::outcome_name(v.outcome);
  if (std::isfinite(v.bound)) j["bound"] = v.bound;
  if (!v.note.empty()) j["note"] = v.note;
  return j;
}

bool wants(const std::set<std::string>& filter, const std::string& name) {
  return filter.empty() || filter.count(name) > 0;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw k2q::ParseError("cannot open \"" + path + "\" for writing");
  out << text;
}

struct AnalyzeOpts {
  std::string file;
  std::string tests;
  std::string policy = "given";
  std::string out;
  std::string trace_out;
  long long horizon_cap = 1'000'000;
};

std::set<std::string> split_filter(const std::string& s) {
  std::set<std::string> f;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) f.insert(item);
  return f;
}

int cmd_analyze(const AnalyzeOpts& ao) {
  k2q::TaskSet ts = k2q::load_taskset(ao.file);
  ts = k2q::assign_priorities(std::move(ts), k2q::policy_from_name(ao.policy));
  const std::set<std::string> filter = split_filter(ao.tests);

  json report;
  report["taskset"] = ao.file;
  report["processors"] = ts.processors;
  report["policy"] = ao.policy;
  report["tasks"] = json::array();

  std::set<std::string> all_pass;  // tests that accepted every task so far
  bool first_task = true;

  for (std::size_t k = 0; k < ts.size(); ++k) {
    const k2q::Task& task = ts.tasks[k];
    json tj;
    tj["id"] = task.id;
    tj["wcet"] = task.wcet;
    tj["period"] = task.period;
    tj["deadline"] = task.deadline;
    tj["utilization"] = task.utilization();
    json tests = json::object();

    std::vector<k2q::Verdict> verdicts;
    if (ts.processors == 1) {
      verdicts.push_back(k2q::window_quadratic_test(ts, k));
      verdicts.push_back(k2q::response_sched_test(ts, k));
      const k2q::RmUtilBounds rb = k2q::rm_util_bounds(ts, k);
      verdicts.push_back(rb.verdict);
      if (wants(filter, "response-wcrt")) {
        json rj;
        const auto wb = k2q::wcrt_bound(ts, k);
        if (!wb)
          rj["note"] = "utilization above one";
        else if (wb->unbounded)
          rj["unbounded"] = true;
        else
          rj["bound"] = wb->value;
        tests["response-wcrt"] = rj;
      }
    } else {
      verdicts.push_back(k2q::grm_quadratic_test(ts, k));
      if (k >= 1) verdicts.push_back(k2q::grm_util_test(ts, k));
      k2q::Verdict gdm = k2q::gdm_quadratic_test(ts, k);
      if (!gdm.ok()) {
        try {
          gdm.note = std::string("speedup witness: ") +
                     k2q::witness_name(k2q::gdm_speedup_witness(ts, k));
        } catch (const std::logic_error&) {
        }
      }
      verdicts.push_back(gdm);
    }
    for (const k2q::Verdict& v : verdicts) {
      if (!wants(filter, v.condition)) continue;
      tests[v.condition] = verdict_json(v);
      if (first_task) {
        if (v.ok()) all_pass.insert(v.condition);
      } else if (!v.ok()) {
        all_pass.erase(v.condition);
      }
    }

    if (ts.processors == 1 && wants(filter, "exact")) {
      json ej;
      try {
        const auto bw = k2q::oracles::busy_window_exact(ts, k);
        if (bw.bounded) {
          ej["wcrt"] = bw.wcrt;
          ej["busy_windows"] = bw.windows;
          ej["meets_deadline"] =
              static_cast<double>(bw.wcrt) <= task.deadline;
        } else {
          ej["wcrt"] = nullptr;
        }
        if (task.deadline <= task.period)
          ej["tda"] = verdict_json(k2q::oracles::tda_exact(ts, k));
      } catch (const k2q::oracles::OracleError& e) {
        ej["error"] = e.what();
      }
      tests["exact"] = ej;
    }

    tj["tests"] = tests;
    report["tasks"].push_back(tj);
    first_task = false;
  }

  report["schedulable_by"] = json::array();
  for (const std::string& name : all_pass)
    report["schedulable_by"].push_back(name);

  if (ts.processors > 1 && wants(filter, "simulation")) {
    json sj;
    try {
      k2q::oracles::SimOptions so;
      so.horizon_cap = ao.horizon_cap;
      so.record_trace = !ao.trace_out.empty();
      const long long horizon =
          k2q::oracles::hyperperiod_capped(ts, ao.horizon_cap);
      const auto res = k2q::oracles::simulate_global_fp(ts, horizon, so);
      sj["horizon"] = res.horizon;
      sj["conclusive"] = res.hyperperiod_covered;
      sj["misses"] = res.misses;
      if (res.misses > 0) {
        sj["first_miss_time"] = res.first_miss_time;
        sj["first_miss_task"] = ts.tasks[res.first_miss_task].id;
      }
      if (!ao.trace_out.empty()) {
        std::ofstream tf(ao.trace_out, std::ios::binary);
        if (!tf)
          throw k2q::ParseError("cannot open \"" + ao.trace_out +
                                "\" for writing");
        k2q::oracles::write_json_lines(res.trace, tf);
        sj["trace"] = ao.trace_out;
      }
    } catch (const k2q::oracles::OracleError& e) {
      sj["error"] = e.what();
    }
    report["simulation"] = sj;
  }

  write_text(ao.out, report.dump(2) + "\n");
  return 0;
}

struct SweepOpts {
  std::string config;
  std::string util_grid = "0.1:1.0:0.1";
  std::string tests;
  std::string policy = "rm";
  std::string out;
  long long trials = 100;
  std::uint64_t seed = 1;
  // Inline generator overrides; negative means "not given".
  int n = -1;
  int processors = -1;
  double period_min = -1;
  double period_max = -1;
  double ratio_min = -1;
  double ratio_max = -1;
  bool force_integer = false;
  bool force_real = false;
};

std::vector<double> parse_grid(const std::string& s) {
  std::vector<double> grid;
  if (s.find(':') != std::string::npos) {
    double a = 0, b = 0, step = 0;
    char c1 = 0, c2 = 0;
    std::istringstream is(s);
    if (!(is >> a >> c1 >> b >> c2 >> step) || c1 != ':' || c2 != ':' ||
        step <= 0 || b < a)
      throw k2q::ParseError("bad utilization grid \"" + s +
                            "\" (want start:stop:step)");
    for (double u = a; u <= b + 1e-12; u += step) grid.push_back(u);
  } else {
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.empty()) continue;
      try {
        grid.push_back(std::stod(item));
      } catch (const std::exception&) {
        throw k2q::ParseError("bad utilization value \"" + item + "\"");
      }
    }
  }
  if (grid.empty()) throw k2q::ParseError("empty utilization grid");
  return grid;
}

int cmd_sweep(const SweepOpts& so) {
  k2q::GenConfig base;
  if (!so.config.empty()) {
    std::ifstream in(so.config);
    if (!in) throw k2q::ParseError("cannot open \"" + so.config + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    base = k2q::gen_config_from_json(buf.str());
  } else {
    base.n = 4;  // a single-task sweep is rarely what anyone means
  }
  if (so.n > 0) base.n = so.n;
  if (so.processors > 0) base.processors = so.processors;
  if (so.period_min > 0) base.period_min = so.period_min;
  if (so.period_max > 0) base.period_max = so.period_max;
  if (so.ratio_min > 0) base.ratio_min = so.ratio_min;
  if (so.ratio_max > 0) base.ratio_max = so.ratio_max;
  if (so.force_real) base.integer_mode = false;
  if (so.force_integer) base.integer_mode = true;
  base.policy = k2q::policy_from_name(so.policy);

  const std::vector<double> grid = parse_grid(so.util_grid);
  const std::set<std::string> filter = split_filter(so.tests);
  std::vector<std::string> tests;
  if (base.processors == 1) {
    for (const char* t :
         {"window-quadratic", "response-bound", "rm-utilization"})
      if (wants(filter, t)) tests.push_back(t);
  } else {
    for (const char* t : {"grm-quadratic", "grm-utilization", "gdm-quadratic"})
      if (wants(filter, t)) tests.push_back(t);
  }
  if (tests.empty()) throw k2q::ParseError("no tests left after filtering");

  std::ostringstream csv;
  csv.imbue(std::locale::classic());
  csv << "util,test,accepted,total,ratio\n";

  for (std::size_t bi = 0; bi < grid.size(); ++bi) {
    std::vector<long long> accepted(tests.size(), 0);
    for (long long trial = 0; trial < so.trials; ++trial) {
      k2q::GenConfig cfg = base;
      cfg.total_util = grid[bi];
      cfg.seed = k2q::mix_seed(so.seed, bi, static_cast<std::uint64_t>(trial));
      k2q::TaskSet ts;
      try {
        ts = k2q::gen_taskset(cfg);
      } catch (const std::exception&) {
        continue;  // infeasible bucket: counts toward total, never accepted
      }
      for (std::size_t ti = 0; ti < tests.size(); ++ti) {
        bool all = true;
        for (std::size_t k = 0; k < ts.size() && all; ++k) {
          const std::string& t = tests[ti];
          if (t == "window-quadratic")
            all = k2q::window_quadratic_test(ts, k).ok();
          else if (t == "response-bound")
            all = k2q::response_sched_test(ts, k).ok();
          else if (t == "rm-utilization")
            all = k2q::rm_util_bounds(ts, k).verdict.ok();
          else if (t == "grm-quadratic")
            all = k2q::grm_quadratic_test(ts, k).ok();
          else if (t == "grm-utilization")
            // The highest-priority task faces no interference; it meets an
            // implicit deadline whenever its utilization is at most one.
            all = k == 0 ? ts.tasks[0].deadline == ts.tasks[0].period
                         : k2q::grm_util_test(ts, k).ok();
          else
            all = k2q::gdm_quadratic_test(ts, k).ok();
        }
        if (all) ++accepted[ti];
      }
    }
    for (std::size_t ti = 0; ti < tests.size(); ++ti) {
      char util_buf[32], ratio_buf[32];
      std::snprintf(util_buf, sizeof util_buf, "%.6g", grid[bi]);
      std::snprintf(ratio_buf, sizeof ratio_buf, "%.6f",
                    so.trials > 0
                        ? static_cast<double>(accepted[ti]) /
                              static_cast<double>(so.trials)
                        : 0.0);
      csv << util_buf << ',' << tests[ti] << ',' << accepted[ti] << ','
          << so.trials << ',' << ratio_buf << '\n';
    }
  }

  write_text(so.out, csv.str());
  return 0;
}

struct VerifyOpts {
  std::vector<std::string> suites;
  std::uint64_t seed = 1;
  long long count = 0;
  long long horizon_cap = 1'000'000;
};

int cmd_verify(const VerifyOpts& vo) {
  std::vector<std::string> names = vo.suites;
  if (names.empty()) names = k2q::verify::suite_names();

  k2q::verify::Options opts;
  opts.seed = vo.seed;
  opts.count = vo.count;
  opts.horizon_cap = vo.horizon_cap;

  bool all_ok = true;
  for (const std::string& name : names) {
    const k2q::verify::SuiteResult r = k2q::verify::run_suite(name, opts);
    char line[160];
    std::snprintf(line, sizeof line, "[%s] %s: %lld checks in %.2fs",
                  r.passed() ? "PASS" : "FAIL", r.name.c_str(),
                  static_cast<long long>(r.checked), r.seconds);
    std::cout << line << "\n";
    for (const std::string& n : r.notes) std::cout << "    " << n << "\n";
    for (const auto& v : r.violations) {
      std::cout << "    violation: " << v.what << "\n";
      if (!v.instance.empty())
        std::cout << "      instance: " << v.instance << "\n";
    }
    all_ok = all_ok && r.passed();
  }
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"schedulability analysis for fixed-priority real-time tasks"};
  app.require_subcommand(1);

  AnalyzeOpts ao;
  CLI::App* analyze =
      app.add_subcommand("analyze", "run every applicable test on a task set");
  analyze->add_option("taskset", ao.file, "task set JSON file")->required();
  analyze->add_option("--tests", ao.tests,
                      "comma-separated test names to keep (default all)");
  analyze->add_option("--policy", ao.policy, "priority order: rm, dm or given");
  analyze->add_option("--horizon-cap", ao.horizon_cap,
                      "simulation horizon cap in ticks");
  analyze->add_option("--out", ao.out, "write the JSON report here");
  analyze->add_option("--trace-out", ao.trace_out,
                      "write simulator events here as JSON lines");

  SweepOpts so;
  CLI::App* sweep =
      app.add_subcommand("sweep", "acceptance ratio over a utilization grid");
  sweep->add_option("--config", so.config, "generator config JSON file");
  sweep->add_option("--util-grid", so.util_grid,
                    "start:stop:step or comma-separated utilizations");
  sweep->add_option("--trials", so.trials, "task sets per bucket");
  sweep->add_option("--seed", so.seed, "experiment seed");
  sweep->add_option("--policy", so.policy, "priority order: rm, dm or given");
  sweep->add_option("--tests", so.tests,
                    "comma-separated test names to keep (default all)");
  sweep->add_option("--out", so.out, "write the CSV here");
  sweep->add_option("--tasks", so.n, "tasks per generated set");
  sweep->add_option("--processors", so.processors, "processor count");
  sweep->add_option("--period-min", so.period_min, "shortest period");
  sweep->add_option("--period-max", so.period_max, "longest period");
  sweep->add_option("--ratio-min", so.ratio_min, "smallest deadline/period");
  sweep->add_option("--ratio-max", so.ratio_max, "largest deadline/period");
  sweep->add_flag("--integer", so.force_integer, "integer task parameters");
  sweep->add_flag("--real", so.force_real, "real-valued task parameters");

  VerifyOpts vo;
  CLI::App* verify =
      app.add_subcommand("verify", "run the self-checking suites");
  verify->add_option("--suite", vo.suites,
                     "suite name (repeatable; default all)");
  verify->add_option("--seed", vo.seed, "corpus seed");
  verify->add_option("--count", vo.count,
                     "override the per-suite sample count");
  verify->add_option("--horizon-cap", vo.horizon_cap,
                     "simulation horizon cap in ticks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(analyze)) return cmd_analyze(ao);
    if (app.got_subcommand(sweep)) return cmd_sweep(so);
    return cmd_verify(vo);
  } catch (const k2q::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const k2q::oracles::OracleError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
