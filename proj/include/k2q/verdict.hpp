#pragma once

#include <limits>
#include <string>

namespace k2q {

// Outcome of a sufficient schedulability condition. NotProven is not a proof
// of unschedulability. NotApplicable means a hypothesis of the condition
// failed, so the condition says nothing either way; callers must not collapse
// it into a rejection.
enum class Outcome { Schedulable, NotProven, NotApplicable };

struct Verdict {
  Outcome outcome = Outcome::NotApplicable;
  double bound = std::numeric_limits<double>::quiet_NaN();  // RHS the decision compared against
  std::string condition;  // name of the test that produced the verdict
  std::string note;       // reason when NotApplicable

  bool ok() const { return outcome == Outcome::Schedulable; }
};

inline const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Schedulable: return "schedulable";
    case Outcome::NotProven: return "not-proven";
    default: return "not-applicable";
  }
}

// Upper bound on a response time. Unbounded exactly when the weighted rate
// terms reach the full capacity (sum alpha_i*u_i >= 1).
struct ResponseBound {
  double value = std::numeric_limits<double>::infinity();
  bool unbounded = true;

  bool finite() const { return !unbounded; }
  bool infinite() const { return unbounded; }
};

}  // namespace k2q
