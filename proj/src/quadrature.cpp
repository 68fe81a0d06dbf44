#include "zetalab/quadrature.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <exception>
#include <numbers>
#include <thread>

#include "zetalab/errors.hpp"
#include "zetalab/special_functions.hpp"
#include "zetalab/zeros.hpp"

namespace zetalab {

namespace {

using Kronrod = boost::math::quadrature::gauss_kronrod<double, 31>;
using Gauss = boost::math::quadrature::gauss<double, 15>;

struct GkEstimate {
  double kronrod;
  double gauss;
};

// Kronrod abscissae interleave the Gauss ones: even indices are Gauss nodes.
GkEstimate gk31(const std::function<double(double)>& f, double a, double b) {
  const auto& xk = Kronrod::abscissa();
  const auto& wk = Kronrod::weights();
  const auto& wg = Gauss::weights();
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  const double f0 = f(mid);
  double k = wk[0] * f0;
  double g = wg[0] * f0;
  for (std::size_t i = 1; i < xk.size(); ++i) {
    const double dx = half * xk[i];
    const double pair = f(mid - dx) + f(mid + dx);
    k += wk[i] * pair;
    if (i % 2 == 0) g += wg[i / 2] * pair;
  }
  return {k * half, g * half};
}

void integrate_recursive(const std::function<double(double)>& f, double a, double b,
                         const PrecisionPolicy& policy, int depth, QuadratureResult& out) {
  const auto est = gk31(f, a, b);
  out.evaluations += 31;
  const double err = std::abs(est.kronrod - est.gauss);
  if (err <= std::max(policy.rel_tol * std::abs(est.kronrod), policy.abs_tol * (b - a))) {
    out.value += est.kronrod;
    out.err += err;
    return;
  }
  if (depth >= policy.max_panel_depth) {
    throw BudgetExceeded("quadrature: panel [" + std::to_string(a) + ", " + std::to_string(b) +
                         "] did not converge within max_panel_depth = " +
                         std::to_string(policy.max_panel_depth));
  }
  const double mid = 0.5 * (a + b);
  integrate_recursive(f, a, mid, policy, depth + 1, out);
  integrate_recursive(f, mid, b, policy, depth + 1, out);
}

double next_edge_from(double x, const double* bp_begin, const double* bp_end) {
  double next = x + panel_width(x);
  const double* it = std::upper_bound(bp_begin, bp_end, x);
  if (it != bp_end && *it < next) next = *it;
  return next;
}

void validate_interval(double lower, double upper) {
  if (!std::isfinite(lower) || !std::isfinite(upper) || lower < 0.0 || upper < lower) {
    throw DomainError("moment_integral: need 0 <= lower <= upper < inf");
  }
}

void validate_kind(const Integrand& kind, double lower, const QuadratureOptions& options,
                   const ZeroTable* table) {
  switch (kind.kind) {
    case IntegrandKind::sigma2:
      if (!(kind.sigma >= 0.5 + options.epsilon)) {
        throw DomainError("moment_integral: sigma2 needs sigma >= 1/2 + epsilon");
      }
      if (kind.sigma == 1.0 && lower == 0.0) {
        throw DomainError("moment_integral: |zeta(1+it)|^2 is not integrable at t = 0");
      }
      break;
    case IntegrandKind::s1_2l:
      if (kind.l < 1) throw DomainError("moment_integral: s1_2l needs l >= 1");
      if (table == nullptr) throw DomainError("moment_integral: s1_2l needs a zero table");
      break;
    default:
      break;
  }
}

std::vector<double> breakpoints_for(const Integrand& kind, const ZeroTable* table) {
  if (kind.kind == IntegrandKind::s1_2l && table != nullptr) return table->zeros();
  return {};
}

std::vector<QuadratureResult> integrate_each(const std::function<double(double)>& f,
                                             std::span<const double> edges,
                                             const PrecisionPolicy& policy, unsigned workers) {
  const std::size_t panels = edges.size() < 2 ? 0 : edges.size() - 1;
  std::vector<QuadratureResult> parts(panels);
  std::vector<std::exception_ptr> failures(panels);
  auto run = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      try {
        parts[i] = integrate_panel(f, edges[i], edges[i + 1], policy);
      } catch (...) {
        failures[i] = std::current_exception();
        return;
      }
    }
  };
  const std::size_t n_workers =
      std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(1, panels / 64));
  if (n_workers <= 1) {
    run(0, panels);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (panels + n_workers - 1) / n_workers;
    for (std::size_t w = 0; w < n_workers; ++w) {
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(panels, begin + chunk);
      if (begin < end) pool.emplace_back(run, begin, end);
    }
    for (auto& th : pool) th.join();
  }
  for (const auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }
  return parts;
}

}  // namespace

int Integrand::power() const {
  switch (kind) {
    case IntegrandKind::crit4:
      return 4;
    case IntegrandKind::s1_2l:
      return 2 * l;
    default:
      return 2;
  }
}

std::string Integrand::name() const {
  switch (kind) {
    case IntegrandKind::crit2:
      return "crit2";
    case IntegrandKind::crit4:
      return "crit4";
    case IntegrandKind::sigma2:
      return "sigma2";
    case IntegrandKind::s1_2l:
      return "s1_2l";
  }
  return "unknown";
}

double panel_width(double t) {
  const double lg = std::log(std::max(t, 1.0) / (2.0 * std::numbers::pi));
  return std::numbers::pi / std::max(lg, 1.0);
}

QuadratureResult integrate_panel(const std::function<double(double)>& f, double a, double b,
                                 const PrecisionPolicy& policy) {
  QuadratureResult out;
  if (b == a) return out;
  integrate_recursive(f, a, b, policy, 0, out);
  return out;
}

std::vector<double> panel_edges(double a, double b, std::span<const double> breakpoints) {
  std::vector<double> edges{a};
  const double* bp = breakpoints.data();
  const double* bp_end = bp + breakpoints.size();
  double x = a;
  while (x < b) {
    x = std::min(b, next_edge_from(x, bp, bp_end));
    edges.push_back(x);
  }
  return edges;
}

QuadratureResult integrate_panels(const std::function<double(double)>& f,
                                  std::span<const double> edges, const PrecisionPolicy& policy,
                                  unsigned workers) {
  QuadratureResult total;
  for (const auto& part : integrate_each(f, edges, policy, workers)) {
    total.value += part.value;
    total.err += part.err;
    total.evaluations += part.evaluations;
  }
  return total;
}

std::function<double(double)> integrand_function(const Integrand& kind,
                                                 const PrecisionPolicy& policy,
                                                 const ZeroTable* table) {
  switch (kind.kind) {
    case IntegrandKind::crit2:
      return [policy](double t) {
        const double z = hardy_Z(t, policy);
        return z * z;
      };
    case IntegrandKind::crit4:
      return [policy](double t) {
        const double z = hardy_Z(t, policy);
        return (z * z) * (z * z);
      };
    case IntegrandKind::sigma2:
      return [policy, sigma = kind.sigma](double t) {
        return std::norm(zeta_on_sigma(sigma, t, policy));
      };
    case IntegrandKind::s1_2l:
      if (table == nullptr) throw DomainError("s1_2l integrand needs a zero table");
      return [policy, table, l = kind.l](double t) {
        const double s1 = S1_of_t(t, *table, policy);
        return std::pow(s1 * s1, l);
      };
  }
  throw DomainError("unknown integrand kind");
}

MomentRecord moment_integral(double lower, double upper, const Integrand& kind,
                             const PrecisionPolicy& policy, const ZeroTable* table,
                             const QuadratureOptions& options) {
  policy.validate();
  validate_interval(lower, upper);
  validate_kind(kind, lower, options, table);
  MomentRecord rec{lower, upper, kind.power(), 0.0, 0.0, 0};
  if (lower == upper) return rec;
  if (kind.kind == IntegrandKind::s1_2l && upper > table->upper_bound()) {
    throw CoverageError("moment_integral: S1 integrand beyond zero-table coverage");
  }
  const auto f = integrand_function(kind, policy, table);
  const auto bps = breakpoints_for(kind, table);
  const auto edges = panel_edges(lower, upper, bps);
  const auto res = integrate_panels(f, edges, policy, options.workers);
  rec.value = res.value;
  rec.err_estimate = res.err;
  rec.evaluations = res.evaluations;
  return rec;
}

MomentRecord second_moment_J(double T, const PrecisionPolicy& policy,
                             const QuadratureOptions& options) {
  return moment_integral(0.0, T, Integrand::crit2(), policy, nullptr, options);
}

MomentRecord fourth_moment(double T, const PrecisionPolicy& policy,
                           const QuadratureOptions& options) {
  return moment_integral(0.0, T, Integrand::crit4(), policy, nullptr, options);
}

MomentRecord moment(double lower, double upper, const Integrand& kind, const LabContext& ctx,
                    const ZeroTable* table) {
  QuadratureOptions options;
  options.workers = ctx.workers;
  options.epsilon = ctx.epsilon;
  if (ctx.store != nullptr) {
    if (auto hit = ctx.store->load(kind, lower, upper, ctx.policy)) return *hit;
  }
  auto rec = moment_integral(lower, upper, kind, ctx.policy, table, options);
  if (ctx.store != nullptr) ctx.store->save(kind, rec, ctx.policy);
  return rec;
}

MemoryMomentStore::Key MemoryMomentStore::key(const Integrand& kind, double lower, double upper,
                                               const PrecisionPolicy& p) {
  return {static_cast<int>(kind.kind), kind.sigma, kind.l, lower, upper, p.abs_tol,
          p.rel_tol, p.max_series_terms, p.max_panel_depth};
}

std::optional<MomentRecord> MemoryMomentStore::load(const Integrand& kind, double lower,
                                                    double upper, const PrecisionPolicy& policy) {
  const auto k = key(kind, lower, upper, policy);
  if (auto it = records_.find(k); it != records_.end()) return it->second;
  if (parent_ != nullptr) {
    if (auto hit = parent_->load(kind, lower, upper, policy)) {
      records_.emplace(k, *hit);
      return hit;
    }
  }
  return std::nullopt;
}

void MemoryMomentStore::save(const Integrand& kind, const MomentRecord& record,
                             const PrecisionPolicy& policy) {
  records_[key(kind, record.lower, record.upper, policy)] = record;
  if (parent_ != nullptr) parent_->save(kind, record, policy);
}

void prefill_from_zero(const Integrand& kind, std::vector<double> uppers, const LabContext& ctx,
                       const ZeroTable* table) {
  if (ctx.store == nullptr) throw DomainError("prefill_from_zero: context has no moment store");
  std::sort(uppers.begin(), uppers.end());
  QuadratureOptions options;
  options.workers = ctx.workers;
  options.epsilon = ctx.epsilon;
  std::optional<RunningMoment> running;
  for (double u : uppers) {
    if (ctx.store->load(kind, 0.0, u, ctx.policy)) continue;
    if (!running) running.emplace(0.0, kind, ctx.policy, table, options);
    ctx.store->save(kind, running->record_to(u), ctx.policy);
  }
}

RunningMoment::RunningMoment(double lower, Integrand kind, const PrecisionPolicy& policy,
                             const ZeroTable* table, QuadratureOptions options)
    : kind_(kind), policy_(policy), table_(table), options_(options) {
  policy_.validate();
  validate_interval(lower, lower);
  validate_kind(kind_, lower, options_, table_);
  f_ = integrand_function(kind_, policy_, table_);
  edges_.push_back(lower);
  prefix_value_.push_back(0.0);
  prefix_err_.push_back(0.0);
  prefix_evals_.push_back(0);
}

double RunningMoment::next_edge(double x) const {
  if (kind_.kind == IntegrandKind::s1_2l) {
    const auto& z = table_->zeros();
    return next_edge_from(x, z.data(), z.data() + z.size());
  }
  return x + panel_width(x);
}

void RunningMoment::extend_past(double upper) {
  // Grow until the panel starting at the last edge would end beyond `upper`.
  std::vector<double> fresh{edges_.back()};
  while (next_edge(fresh.back()) <= upper) fresh.push_back(next_edge(fresh.back()));
  if (fresh.size() < 2) return;
  const auto parts = integrate_each(f_, fresh, policy_, options_.workers);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    edges_.push_back(fresh[i + 1]);
    prefix_value_.push_back(prefix_value_.back() + parts[i].value);
    prefix_err_.push_back(prefix_err_.back() + parts[i].err);
    prefix_evals_.push_back(prefix_evals_.back() + parts[i].evaluations);
  }
}

MomentRecord RunningMoment::record_to(double upper) {
  const double lower = edges_.front();
  if (!std::isfinite(upper) || upper < lower) {
    throw DomainError("RunningMoment: upper limit below the lower limit");
  }
  MomentRecord rec{lower, upper, kind_.power(), 0.0, 0.0, 0};
  if (upper == lower) return rec;
  if (kind_.kind == IntegrandKind::s1_2l && upper > table_->upper_bound()) {
    throw CoverageError("RunningMoment: S1 integrand beyond zero-table coverage");
  }
  extend_past(upper);
  // Last edge <= upper.
  const auto it = std::upper_bound(edges_.begin(), edges_.end(), upper);
  const auto k = static_cast<std::size_t>(std::distance(edges_.begin(), it) - 1);
  rec.value = prefix_value_[k];
  rec.err_estimate = prefix_err_[k];
  rec.evaluations = prefix_evals_[k];
  if (edges_[k] < upper) {
    const auto part = integrate_panel(f_, edges_[k], upper, policy_);
    rec.value += part.value;
    rec.err_estimate += part.err;
    rec.evaluations += part.evaluations;
  }
  return rec;
}

}  // namespace zetalab
