#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace k2q::verify {

struct Violation {
  std::string what;
  std::string instance;  // offending input, JSON where available
};

struct SuiteResult {
  std::string name;
  long long checked = 0;
  std::vector<Violation> violations;  // capped at a handful per suite
  std::vector<std::string> notes;     // reported metrics
  double seconds = 0;

  bool passed() const { return violations.empty(); }
};

struct Options {
  std::uint64_t seed = 1;
  long long count = 0;  // 0 = suite default
  long long horizon_cap = 1'000'000;
};

// Self-check suites pairing the closed forms with the independent oracles.
// Unknown names throw std::invalid_argument.
SuiteResult run_suite(const std::string& name, const Options& opts);

std::vector<std::string> suite_names();

}  // namespace k2q::verify
