#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "k2q/verdict.hpp"

namespace k2q {

// Comparison tolerance for normalized (ratio) quantities.
inline constexpr double kRatioTol = 1e-9;

// One higher-priority contribution: a rate-like share u weighted by alpha and
// an execution-like demand c weighted by beta. What c and u stand for is up
// to the instantiation; the tests only rely on alpha, beta > 0, c >= 0 and
// 0 < u <= 1.
struct KEntry {
  double alpha = 1.0;
  double beta = 1.0;
  double c = 0.0;
  double u = 0.0;
};

// Entries must be listed in last-release order, earliest first; the order is
// part of the instance. ck is the demand of the task under analysis (> 0),
// tk the final test point (> 0; ignored by the response bound).
struct KPointInstance {
  std::vector<KEntry> entries;
  double ck = 0.0;
  double tk = 0.0;
};

// Evaluates the k-point condition at explicit points t_1 <= ... <= t_k:
// schedulable iff some j satisfies ck + sum_i alpha_i t_i u_i +
// sum_{i<j} beta_i c_i <= t_j. points.size() must equal entries.size() + 1.
// Verdict.bound holds the largest slack t_j - lhs_j, normalized by t_k for
// the comparison.
Verdict kpoint_test_direct(const KPointInstance& inst,
                           const std::vector<double>& points);

// Closed form of the k-point test: schedulable iff
//   ck/tk <= 1 - sum alpha_i u_i - [sum_i (beta_i c_i -
//            alpha_i u_i * sum_{l>=i} beta_l c_l)]/tk.
// Requires sum alpha_i u_i <= 1 and sum beta_i c_i <= tk; otherwise
// NotApplicable. Verdict.bound is the right-hand side.
Verdict quadratic_bound_general(const KPointInstance& inst);

// Worst-case last-release order: nonincreasing beta_i c_i / (alpha_i u_i),
// stable on ties. The same key minimizes the schedulability RHS and
// maximizes the response bound, so both ops sort identically.
std::vector<KEntry> worst_case_ordering_sched(std::vector<KEntry> entries);
std::vector<KEntry> worst_case_ordering_response(std::vector<KEntry> entries);

// Uniform-coefficient right-hand sides, valid whenever every entry satisfies
// beta_i c_i <= beta u_i tk and alpha_i <= alpha. The nested form carries the
// order-independent double sum; the closed form is its algebraic collapse.
double uniform_quadratic_rhs_nested(const std::vector<double>& u, double alpha,
                                    double beta);
double uniform_quadratic_rhs_closed(const std::vector<double>& u, double alpha,
                                    double beta);

// Verdict over the uniform RHS: schedulable iff ck_over_tk <= RHS.
Verdict quadratic_bound_uniform(const std::vector<double>& u, double alpha,
                                double beta, double ck_over_tk);

// Total-utilization thresholds. k counts the task under analysis, k >= 2.
// Returns nullopt where the formula's hypotheses fail (negative discriminant
// for the first, alpha+beta < 1 for the other two).
//
// util_bound_exclusive: threshold on sum_{i<k} u_i given ck/tk.
// util_bound_inclusive: threshold on ck/tk + sum_{i<k} u_i.
// util_bound_inclusive_beta: threshold on sum_{i<=k} u_i when ck/tk = beta*u_k.
std::optional<double> util_bound_exclusive(long long k, double alpha,
                                           double beta, double ck_over_tk);
std::optional<double> util_bound_inclusive(long long k, double alpha,
                                           double beta);
std::optional<double> util_bound_inclusive_beta(long long k, double alpha,
                                                double beta);

// Response bound (ck + sum beta_i c_i - sum_i alpha_i u_i *
// sum_{l>=i} beta_l c_l) / (1 - sum alpha_i u_i); unbounded exactly when
// sum alpha_i u_i >= 1. Entries must already be in last-release order.
ResponseBound response_bound_general(const KPointInstance& inst);

}  // namespace k2q
