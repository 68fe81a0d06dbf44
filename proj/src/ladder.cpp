#include "zetalab/ladder.hpp"

#include <algorithm>
#include <boost/math/tools/toms748_solve.hpp>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>

#include "zetalab/errors.hpp"
#include "zetalab/quadrature.hpp"

namespace zetalab {

namespace {

constexpr double kRootRelTol = 1e-10;
constexpr int kMaxSteps = 10;

template <class F>
double solve_step(double lower, double one_minus_c, F&& excess, double* residual) {
  const double target = one_minus_c * lower;
  double width = target / std::log(lower);
  double hi = lower + width;
  double f_hi = excess(hi);
  while (f_hi <= 0.0) {
    width *= 1.5;
    if (lower + width > 10.0 * lower) {
      throw SolverError("reverse step from " + std::to_string(lower) +
                        ": no bracket below 10x the start point");
    }
    hi = lower + width;
    f_hi = excess(hi);
  }
  // excess(lower) = -target < 0
  std::uintmax_t max_iter = 200;
  const auto tol = [](double a, double b) {
    return std::abs(b - a) <= kRootRelTol * std::min(std::abs(a), std::abs(b));
  };
  const auto [a, b] = boost::math::tools::toms748_solve(excess, lower, hi, -target, f_hi, tol,
                                                        max_iter);
  if (max_iter >= 200) {
    throw SolverError("reverse step from " + std::to_string(lower) + ": root did not converge");
  }
  const double root = 0.5 * (a + b);
  if (residual != nullptr) *residual = std::abs(excess(root)) / target;
  return root;
}

}  // namespace

std::string to_string(LadderMode mode) {
  return mode == LadderMode::integral ? "integral" : "asymptotic";
}

LadderMode ladder_mode_from_string(const std::string& text) {
  if (text == "integral") return LadderMode::integral;
  if (text == "asymptotic") return LadderMode::asymptotic;
  throw DomainError("unknown ladder mode '" + text + "' (expected integral or asymptotic)");
}

double J_hat(double T) { return T * std::log(T / (2.0 * std::numbers::pi)) - T; }

double reverse_step(double lower, LadderMode mode, const LabContext& ctx, double* residual) {
  if (!(lower > 1.0) || !std::isfinite(lower)) {
    throw DomainError("reverse_step: lower point must exceed 1");
  }
  const double one_minus_c = 1.0 - ctx.constants.euler_c;
  const double target = one_minus_c * lower;
  if (mode == LadderMode::asymptotic) {
    const double j_lower = J_hat(lower);
    return solve_step(
        lower, one_minus_c, [&](double u) { return J_hat(u) - j_lower - target; }, residual);
  }
  QuadratureOptions options;
  options.workers = ctx.workers;
  options.epsilon = ctx.epsilon;
  RunningMoment running(lower, Integrand::crit2(), ctx.policy, nullptr, options);
  return solve_step(
      lower, one_minus_c, [&](double u) { return running.value_to(u) - target; }, residual);
}

LadderSequence reverse_iterate(double T, int k, LadderMode mode, const LabContext& ctx) {
  if (!(T >= ctx.t0) || !std::isfinite(T)) {
    throw DomainError("reverse_iterate: T must be >= T0 = " + std::to_string(ctx.t0));
  }
  if (k < 0 || k > kMaxSteps) throw DomainError("reverse_iterate: need 0 <= k <= 10");
  LadderSequence seq;
  seq.base_T = T;
  seq.mode = mode;
  seq.iterates.push_back(T);
  for (int r = 1; r <= k; ++r) {
    double residual = 0.0;
    const double prev = seq.iterates.back();
    const double next = reverse_step(prev, mode, ctx, &residual);
    seq.iterates.push_back(next);
    seq.increments.push_back(next - prev);
    seq.residuals.push_back(residual);
  }
  return seq;
}

PartitionReport check_partition_properties(const LadderSequence& seq, const LabContext& ctx) {
  if (seq.iterates.size() < 3) {
    throw DomainError("check_partition_properties: need at least two ladder steps");
  }
  PartitionReport report;
  QuadratureOptions options;
  options.workers = ctx.workers;
  options.epsilon = ctx.epsilon;
  for (std::size_t r = 1; r < seq.iterates.size(); ++r) {
    report.segment_integrals.push_back(moment_integral(seq.iterates[r - 1], seq.iterates[r],
                                                       Integrand::crit2(), ctx.policy, nullptr,
                                                       options)
                                           .value);
  }
  const double T = seq.base_T;
  const double scale = (1.0 - ctx.constants.euler_c) * T / std::log(T);
  for (std::size_t r = 1; r < seq.iterates.size(); ++r) {
    const double inc = seq.iterates[r] - seq.iterates[r - 1];
    report.increment_ratios.push_back(inc / scale);
    if (r + 1 < seq.iterates.size()) {
      const double next_inc = seq.iterates[r + 1] - seq.iterates[r];
      report.equidistance_defect =
          std::max(report.equidistance_defect, std::abs(inc / next_inc - 1.0));
      report.integral_defect =
          std::max(report.integral_defect,
                   std::abs(report.segment_integrals[r - 1] / report.segment_integrals[r] - 1.0));
    }
  }
  return report;
}

}  // namespace zetalab
