#include "k2q/workload.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace k2q {

std::vector<double> uunifast(int n, double total_util, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("need at least one task");
  if (total_util > static_cast<double>(n))
    throw std::invalid_argument("total utilization exceeds the task count");
  if (!(total_util > 0)) throw std::invalid_argument("total utilization must be positive");
  if (total_util == static_cast<double>(n))
    return std::vector<double>(n, 1.0);

  std::mt19937_64 rng(seed);
  std::vector<double> u(n);
  for (;;) {
    double remaining = total_util;
    bool valid = true;
    for (int i = 1; i < n; ++i) {
      const double next =
          remaining * std::pow(u01(rng), 1.0 / static_cast<double>(n - i));
      u[i - 1] = remaining - next;
      remaining = next;
    }
    u[n - 1] = remaining;
    for (double x : u)
      if (x > 1.0 || !(x > 0)) valid = false;
    if (valid) return u;
  }
}

TaskSet gen_taskset(const GenConfig& cfg) {
  if (cfg.n < 1) throw std::invalid_argument("need at least one task");
  if (!(cfg.period_min >= 1) || cfg.period_max < cfg.period_min)
    throw std::invalid_argument("bad period range");
  if (!(cfg.ratio_min > 0) || cfg.ratio_max < cfg.ratio_min)
    throw std::invalid_argument("bad deadline ratio range");

  std::mt19937_64 rng(mix_seed(cfg.seed, 0x6b327175ULL, cfg.n));
  const bool fixed_ratio = cfg.ratio_min == cfg.ratio_max;

  for (int attempt = 0; attempt < 10000; ++attempt) {
    const std::vector<double> u =
        uunifast(cfg.n, cfg.total_util, mix_seed(cfg.seed, 1, attempt));

    TaskSet ts;
    ts.processors = cfg.processors;
    bool valid = true;
    for (int i = 0; i < cfg.n && valid; ++i) {
      Task t;
      t.id = "t" + std::to_string(i + 1);
      double lo = cfg.period_min;
      if (cfg.integer_mode) {
        // The period must leave room for at least one whole execution tick.
        lo = std::max(lo, std::ceil(1.0 / u[i]));
        if (lo > cfg.period_max) {
          valid = false;
          break;
        }
      }
      const double draw =
          std::exp(std::log(lo) +
                   u01(rng) * (std::log(cfg.period_max) - std::log(lo)));
      const double ratio =
          fixed_ratio ? cfg.ratio_min
                      : cfg.ratio_min + u01(rng) * (cfg.ratio_max - cfg.ratio_min);

      if (cfg.integer_mode) {
        const long long plo = static_cast<long long>(std::ceil(lo));
        const long long phi = static_cast<long long>(std::floor(cfg.period_max));
        if (plo > phi) {
          valid = false;
          break;
        }
        const long long period =
            std::clamp(static_cast<long long>(std::llround(draw)), plo, phi);
        const long long wcet = static_cast<long long>(
            std::floor(u[i] * static_cast<double>(period)));
        const long long deadline =
            fixed_ratio && cfg.ratio_min == 1.0
                ? period
                : std::max<long long>(
                      1, std::llround(ratio * static_cast<double>(period)));
        t.period = static_cast<double>(period);
        t.wcet = static_cast<double>(wcet);
        t.deadline = static_cast<double>(deadline);
      } else {
        t.period = draw;
        t.wcet = u[i] * draw;
        t.deadline = fixed_ratio && cfg.ratio_min == 1.0 ? draw : ratio * draw;
      }
      if (!(t.wcet >= 1) && cfg.integer_mode) valid = false;
      if (!(t.wcet > 0)) valid = false;
      ts.tasks.push_back(std::move(t));
    }
    if (!valid) continue;
    return assign_priorities(std::move(ts), cfg.policy);
  }
  throw std::runtime_error("generator cannot fit the utilizations into the period range");
}

GenConfig gen_config_from_json(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("generator config must be a JSON object");
  GenConfig cfg;
  cfg.n = j.value("n", cfg.n);
  cfg.total_util = j.value("total_util", cfg.total_util);
  cfg.period_min = j.value("period_min", cfg.period_min);
  cfg.period_max = j.value("period_max", cfg.period_max);
  cfg.ratio_min = j.value("ratio_min", cfg.ratio_min);
  cfg.ratio_max = j.value("ratio_max", cfg.ratio_max);
  cfg.processors = j.value("processors", cfg.processors);
  cfg.integer_mode = j.value("integer_mode", cfg.integer_mode);
  cfg.seed = j.value("seed", cfg.seed);
  if (j.contains("policy"))
    cfg.policy = policy_from_name(j.at("policy").get<std::string>());
  return cfg;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  // splitmix64 finalizer over a fixed combination of the inputs.
  std::uint64_t x = seed + 0x9e3779b97f4a7c15ULL * (a + 1) +
                    0x94d049bb133111ebULL * (b + 1);
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace k2q
