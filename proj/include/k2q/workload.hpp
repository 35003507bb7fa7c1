#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "k2q/task.hpp"

namespace k2q {

// Canonical [0,1) draw: top 53 bits of the engine output. Distribution
// adapters vary across standard libraries; this mapping keeps every corpus
// bit-identical for a given seed.
inline double u01(std::mt19937_64& g) {
  return static_cast<double>(g() >> 11) * (1.0 / 9007199254740992.0);
}

struct GenConfig {
  int n = 1;
  double total_util = 0.5;
  double period_min = 1;     // log-uniform range
  double period_max = 1000;
  double ratio_min = 1;      // deadline = ratio * period
  double ratio_max = 1;
  int processors = 1;
  bool integer_mode = true;
  std::uint64_t seed = 1;
  Policy policy = Policy::RateMonotonic;
};

// Classic utilization split: n positive shares summing to total_util, each
// at most 1 after whole-vector rejection resampling. Throws
// std::invalid_argument when total_util > n.
std::vector<double> uunifast(int n, double total_util, std::uint64_t seed);

// Periods log-uniform in range; C_i = U_i*T_i, floored in integer mode with
// U_i recomputed (so the realized sum never exceeds the target); D_i =
// ratio*T_i, kept inside the model class the ratio range implies. Priorities
// per cfg.policy.
TaskSet gen_taskset(const GenConfig& cfg);

GenConfig gen_config_from_json(const std::string& json_text);

// Derived seed for independent per-trial streams; order-insensitive merge.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b);

}  // namespace k2q
