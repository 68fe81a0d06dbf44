#include "zetalab/chain.hpp"

#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <numbers>

#include "zetalab/errors.hpp"

namespace zetalab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

ConvergenceSlope fit_slope(const std::vector<double>& taus, const std::vector<double>& ratios) {
  std::vector<double> u, v;
  for (std::size_t i = 0; i < taus.size(); ++i) {
    const double gap = std::abs(ratios[i] - 1.0);
    if (std::isfinite(gap) && gap > 0.0) {
      u.push_back(std::log(1.0 / std::log(taus[i])));
      v.push_back(std::log(gap));
    }
  }
  ConvergenceSlope slope;
  if (u.size() < 2) return slope;
  const double n = static_cast<double>(u.size());
  double su = 0, sv = 0, suu = 0, suv = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    su += u[i];
    sv += v[i];
    suu += u[i] * u[i];
    suv += u[i] * v[i];
  }
  const double den = n * suu - su * su;
  if (!(std::abs(den) > 0.0)) return slope;
  slope.p = (n * suv - su * sv) / den;
  slope.beta = std::exp((sv - slope.p * su) / n);
  slope.fitted = true;
  return slope;
}

}  // namespace

const std::array<std::string, kChainMembers>& chain_member_names() {
  static const std::array<std::string, kChainMembers> names{
      "basic_state", "crossbreed",     "divisor_sum", "gram_sum_pi",
      "ln_gamma_ratio", "sigma_moment", "s1_moment"};
  return names;
}

int ChainReport::complete_members() const {
  int complete = 0;
  for (const auto& row : members) {
    bool ok = true;
    for (double v : row) ok = ok && std::isfinite(v);
    if (ok && !row.empty()) ++complete;
  }
  return complete;
}

ChainReport evaluate_chain(double x, double sigma, int l, const std::vector<double>& tau_grid,
                           LadderMode mode, const std::array<double, 5>* a,
                           const ZeroTable* table, const LabContext& ctx) {
  ctx.require_sigma(sigma);
  if (l < 1) throw DomainError("evaluate_chain: l must be >= 1");
  if (tau_grid.empty()) throw DomainError("evaluate_chain: empty tau grid");
  ChainReport report;
  report.x = x;
  report.sigma = sigma;
  report.l = l;
  report.mode = mode;
  report.tau_grid = tau_grid;
  const std::size_t nt = tau_grid.size();
  report.members.assign(kChainMembers, std::vector<double>(nt, kNaN));
  report.ratios.assign(kChainMembers, std::vector<double>(nt, kNaN));
  report.errors.assign(kChainMembers, std::vector<std::string>(nt));

  const std::array<std::function<double(double)>, kChainMembers> member{
      [&](double tau) { return functional_F1(x, tau, mode, ctx).components.at("crit2_integral"); },
      [&](double tau) {
        const auto coeffs = a != nullptr ? *a : ctx.constants.a_coeffs();
        return tau * crossbreed_functional(x, sigma, tau, coeffs, mode, ctx).value;
      },
      [&](double tau) {
        return divisor_sum_functional(x, tau, mode, ctx).components.at("divisor_sum");
      },
      [&](double tau) {
        return std::numbers::pi *
               tnu_sum_functional(x, tau, mode, ctx).components.at("summand_total");
      },
      [&](double tau) {
        return gamma_ratio_functional(x, tau, mode, ctx).components.at("ln_gamma_difference");
      },
      [&](double tau) {
        return sigma_moment_functional(x, sigma, tau, ctx).components.at("sigma_integral");
      },
      [&](double tau) {
        ctx.constants.cbar_for(l);
        if (table == nullptr) throw CoverageError("no zero table supplied for the S1 member");
        return s1_moment_functional(x, l, tau, *table, ctx).components.at("s1_integral");
      },
  };

  for (std::size_t j = 0; j < nt; ++j) {
    for (int m = 0; m < kChainMembers; ++m) {
      try {
        report.members[m][j] = member[m](tau_grid[j]);
      } catch (const Error& e) {
        report.errors[m][j] = e.kind() + ": " + e.what();
      } catch (const std::exception& e) {
        report.errors[m][j] = std::string("Error: ") + e.what();
      }
    }
    const double basic = report.members[0][j];
    for (int m = 0; m < kChainMembers; ++m) {
      if (std::isfinite(basic) && std::isfinite(report.members[m][j])) {
        report.ratios[m][j] = m == 0 ? 1.0 : report.members[m][j] / basic;
      }
    }
  }
  for (int m = 0; m < kChainMembers; ++m) {
    report.slopes.push_back(m == 0 ? ConvergenceSlope{} : fit_slope(tau_grid, report.ratios[m]));
  }
  return report;
}

DistinctnessResult distinctness_experiment(double x1, double x2,
                                           const std::vector<double>& tau_grid, LadderMode mode,
                                           const LabContext& ctx) {
  for (double x : {x1, x2}) {
    if (!(x >= 1.0 && x <= ctx.alpha)) {
      throw DomainError("distinctness_experiment: x must lie in [1, alpha]");
    }
  }
  DistinctnessResult out;
  out.x1 = x1;
  out.x2 = x2;
  out.tau_grid = tau_grid;
  for (double tau : tau_grid) {
    const double v1 = functional_F1(x1, tau, mode, ctx).components.at("crit2_integral");
    const double v2 = x2 == x1 ? v1 : functional_F1(x2, tau, mode, ctx).components.at("crit2_integral");
    out.ratios.push_back(v2 / v1);
  }
  if (tau_grid.size() >= 3) {
    out.fit = extrapolate_limit(tau_grid, out.ratios);
    out.has_fit = true;
  }
  return out;
}

FamilyComparison chain_family_compare(const std::vector<double>& x_list, double sigma, int l,
                                      double tau, LadderMode mode,
                                      const std::array<double, 5>* a, const ZeroTable* table,
                                      const LabContext& ctx) {
  FamilyComparison out;
  out.x_list = x_list;
  out.tau = tau;
  for (double x : x_list) {
    out.chains.push_back(evaluate_chain(x, sigma, l, {tau}, mode, a, table, ctx));
  }
  const std::size_t n = x_list.size();
  const double threshold = std::log1p(ctx.separation_tol);
  out.separated.assign(n, std::vector<bool>(n, false));
  out.min_log_gap.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double gap = std::numeric_limits<double>::infinity();
      int compared = 0;
      for (int m = 0; m < kChainMembers; ++m) {
        const double vi = out.chains[i].members[m][0];
        const double vj = out.chains[j].members[m][0];
        if (!std::isfinite(vi) || !std::isfinite(vj) || vi <= 0.0 || vj <= 0.0) continue;
        gap = std::min(gap, std::abs(std::log(vi / vj)));
        ++compared;
      }
      out.min_log_gap[i][j] = out.min_log_gap[j][i] = compared > 0 ? gap : 0.0;
      out.separated[i][j] = out.separated[j][i] = compared > 0 && gap > threshold;
    }
  }
  return out;
}

}  // namespace zetalab
