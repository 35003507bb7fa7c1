#include "k2q/kpoint.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace k2q {

namespace {

double alpha_rate(const KPointInstance& inst) {
  double r = 0.0;
  for (const KEntry& e : inst.entries) r += e.alpha * e.u;
  return r;
}

double beta_demand(const KPointInstance& inst) {
  double d = 0.0;
  for (const KEntry& e : inst.entries) d += e.beta * e.c;
  return d;
}

}  // namespace

Verdict kpoint_test_direct(const KPointInstance& inst,
                           const std::vector<double>& points) {
  if (points.size() != inst.entries.size() + 1)
    throw std::invalid_argument("need one point per entry plus the final one");
  for (std::size_t j = 1; j < points.size(); ++j)
    if (points[j] < points[j - 1])
      throw std::invalid_argument("points must be nondecreasing");
  const double tk = points.back();
  if (!(tk > 0)) throw std::invalid_argument("final point must be positive");

  double rate = 0.0;
  for (std::size_t i = 0; i < inst.entries.size(); ++i)
    rate += inst.entries[i].alpha * points[i] * inst.entries[i].u;

  double prefix = 0.0;
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < points.size(); ++j) {
    if (j > 0) prefix += inst.entries[j - 1].beta * inst.entries[j - 1].c;
    best = std::max(best, points[j] - (inst.ck + rate + prefix));
  }

  Verdict v;
  v.condition = "kpoint-direct";
  v.bound = best;
  v.outcome = (best / tk >= -kRatioTol) ? Outcome::Schedulable : Outcome::NotProven;
  return v;
}

Verdict quadratic_bound_general(const KPointInstance& inst) {
  Verdict v;
  v.condition = "general-quadratic";
  if (!(inst.tk > 0)) throw std::invalid_argument("tk must be positive");

  const double rate = alpha_rate(inst);
  const double demand = beta_demand(inst);
  if (rate > 1.0 + kRatioTol) {
    v.note = "rate hypothesis fails: sum alpha_i u_i > 1";
    return v;
  }
  if (demand > inst.tk * (1.0 + kRatioTol)) {
    v.note = "demand hypothesis fails: sum beta_i c_i > tk";
    return v;
  }

  // sum_i (beta_i c_i - alpha_i u_i * suffix_i) with suffix_i inclusive of i.
  double suffix = 0.0;
  double corr = 0.0;
  for (std::size_t i = inst.entries.size(); i-- > 0;) {
    const KEntry& e = inst.entries[i];
    suffix += e.beta * e.c;
    corr += e.beta * e.c - e.alpha * e.u * suffix;
  }

  v.bound = 1.0 - rate - corr / inst.tk;
  v.outcome = (inst.ck / inst.tk <= v.bound + kRatioTol) ? Outcome::Schedulable
                                                        : Outcome::NotProven;
  return v;
}

namespace {

std::vector<KEntry> sort_by_ratio(std::vector<KEntry> entries) {
  // Nonincreasing beta*c/(alpha*u), compared by cross multiplication so
  // zero-utilization entries sort ahead without dividing.
  std::stable_sort(entries.begin(), entries.end(),
                   [](const KEntry& a, const KEntry& b) {
                     return a.beta * a.c * b.alpha * b.u >
                            b.beta * b.c * a.alpha * a.u;
                   });
  return entries;
}

}  // namespace

std::vector<KEntry> worst_case_ordering_sched(std::vector<KEntry> entries) {
  return sort_by_ratio(std::move(entries));
}

std::vector<KEntry> worst_case_ordering_response(std::vector<KEntry> entries) {
  return sort_by_ratio(std::move(entries));
}

double uniform_quadratic_rhs_nested(const std::vector<double>& u, double alpha,
                                    double beta) {
  double total = 0.0;
  for (double x : u) total += x;
  double suffix = 0.0;
  double cross = 0.0;
  for (std::size_t i = u.size(); i-- > 0;) {
    suffix += u[i];
    cross += u[i] * suffix;
  }
  return 1.0 - (alpha + beta) * total + alpha * beta * cross;
}

double uniform_quadratic_rhs_closed(const std::vector<double>& u, double alpha,
                                    double beta) {
  double total = 0.0;
  double squares = 0.0;
  for (double x : u) {
    total += x;
    squares += x * x;
  }
  return 1.0 - (alpha + beta) * total +
         0.5 * alpha * beta * (total * total + squares);
}

Verdict quadratic_bound_uniform(const std::vector<double>& u, double alpha,
                                double beta, double ck_over_tk) {
  Verdict v;
  v.condition = "uniform-quadratic";
  v.bound = uniform_quadratic_rhs_closed(u, alpha, beta);
  v.outcome = (ck_over_tk <= v.bound + kRatioTol) ? Outcome::Schedulable
                                                  : Outcome::NotProven;
  return v;
}

std::optional<double> util_bound_exclusive(long long k, double alpha,
                                           double beta, double ck_over_tk) {
  if (k < 2) throw std::invalid_argument("need k >= 2");
  const double ratio = static_cast<double>(k) / static_cast<double>(k - 1);
  const double disc =
      (alpha + beta) * (alpha + beta) - 2.0 * alpha * beta * (1.0 - ck_over_tk) * ratio;
  if (disc < 0) return std::nullopt;
  return (1.0 / ratio) * (alpha + beta - std::sqrt(disc)) / (alpha * beta);
}

std::optional<double> util_bound_inclusive(long long k, double alpha,
                                           double beta) {
  if (k < 2) throw std::invalid_argument("need k >= 2");
  if (alpha + beta < 1.0) return std::nullopt;
  const double kd = static_cast<double>(k);
  const double a = (alpha + beta) * (alpha + beta) - 1.0;
  const double b = alpha * alpha + beta * beta - 1.0;
  // The interior minimizer of x + rhs(x) has value 1 - (k-1)a/(2k alpha beta),
  // which is negative exactly when k*b > a; only then does the boundary root
  // (first case) take over. Comparing k against a/b instead would flip the
  // inequality when b < 0.
  const bool first = kd * b > a;
  if (first) {
    const double disc =
        (alpha + beta) * (alpha + beta) - 2.0 * alpha * beta * kd / (kd - 1.0);
    return ((kd - 1.0) / kd) * (alpha + beta - std::sqrt(std::max(disc, 0.0))) /
           (alpha * beta);
  }
  return 1.0 + (kd - 1.0) *
                   ((alpha + beta - 1.0) - 0.5 * (alpha + beta) * (alpha + beta) + 0.5) /
                   (kd * alpha * beta);
}

std::optional<double> util_bound_inclusive_beta(long long k, double alpha,
                                                double beta) {
  if (k < 2) throw std::invalid_argument("need k >= 2");
  if (alpha + beta < 1.0) return std::nullopt;
  const double kd = static_cast<double>(k);
  const bool first = alpha * (kd - 1.0) > 2.0 * beta;
  if (first) {
    const double disc =
        alpha * alpha + beta * beta - 2.0 * alpha * beta / (kd - 1.0);
    return ((kd - 1.0) / kd) * (alpha + beta - std::sqrt(std::max(disc, 0.0))) /
           (alpha * beta);
  }
  return 1.0 / beta - (kd - 1.0) * alpha / (2.0 * kd * beta * beta);
}

ResponseBound response_bound_general(const KPointInstance& inst) {
  const double rate = alpha_rate(inst);
  if (rate >= 1.0) return {};

  double suffix = 0.0;
  double corr = 0.0;
  for (std::size_t i = inst.entries.size(); i-- > 0;) {
    const KEntry& e = inst.entries[i];
    suffix += e.beta * e.c;
    corr += e.alpha * e.u * suffix;
  }
  return {(inst.ck + suffix - corr) / (1.0 - rate), false};
}

}  // namespace k2q
