#include "zetalab/functionals.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <boost/math/tools/toms748_solve.hpp>
#include <cmath>
#include <numbers>
#include <string>

#include "zetalab/errors.hpp"
#include "zetalab/quadrature.hpp"
#include "zetalab/special_functions.hpp"
#include "zetalab/zeros.hpp"

namespace zetalab {

namespace {

constexpr double kPi = std::numbers::pi;

FunctionalSample make_sample(double tau, double target, double value) {
  FunctionalSample s;
  s.tau = tau;
  s.x_target = target;
  s.value = value;
  s.rel_error_vs_target = target != 0.0 ? std::abs(value / target - 1.0) : 0.0;
  return s;
}

void require_positive(double x, double tau, const char* who) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError(std::string(who) + ": x must be > 0");
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw DomainError(std::string(who) + ": tau must be > 0");
  }
}

struct LadderInterval {
  double lower;
  double upper;
};

// [L, L̂] with L = xτ/(1-c).
LadderInterval ladder_interval(double x, double tau, LadderMode mode, const LabContext& ctx,
                               const char* who) {
  require_positive(x, tau, who);
  const double lower = x * tau / (1.0 - ctx.constants.euler_c);
  if (lower < ctx.t0) {
    throw DomainError(std::string(who) + ": lower ladder point " + std::to_string(lower) +
                      " is below T0 = " + std::to_string(ctx.t0));
  }
  return {lower, reverse_step(lower, mode, ctx)};
}

double zeta_2sigma(double sigma, const LabContext& ctx) {
  return zeta_real(2.0 * sigma, ctx.policy);
}

struct Composition {
  double A, B, F, C, denominator;
};

// F / Σ c_s C^{4-s} with C = B/A, equal to A⁴F / Σ c_s B^{4-s} A^s.
Composition compose(double lower, double upper, double sigma, const std::array<double, 5>& a,
                    const LabContext& ctx) {
  Composition out{};
  out.A = moment(lower, upper, Integrand::sigma2(sigma), ctx).value;
  out.B = moment(lower, upper, Integrand::crit2(), ctx).value;
  out.F = moment(0.0, lower, Integrand::crit4(), ctx).value;
  const auto c = c_coeffs(sigma, a, ctx);
  if (!(out.A > 0.0)) throw DivisionDegenerate("composition: sigma-line integral vanished");
  out.C = out.B / out.A;
  double sum = 0.0;
  for (int s = 0; s <= 4; ++s) sum += c[s] * std::pow(out.C, 4 - s);
  out.denominator = sum;
  if (!(std::abs(sum) > 1e-300) || !std::isfinite(sum) || sum <= 0.0) {
    throw DivisionDegenerate("composition: denominator sum is not positive (tau too small?)");
  }
  return out;
}

void record(FunctionalSample& s, const Composition& c, double lower, double upper) {
  s.components["ladder_lower"] = lower;
  s.components["ladder_upper"] = upper;
  s.components["sigma_integral"] = c.A;
  s.components["crit2_integral"] = c.B;
  s.components["crit4_integral"] = c.F;
  s.components["quotient_C"] = c.C;
  s.components["denominator"] = c.denominator;
}

}  // namespace

double FermatRational::to_double() const { return value.convert_to<double>(); }

std::string FermatRational::str() const {
  const auto den = boost::multiprecision::denominator(value);
  const std::string num = boost::multiprecision::numerator(value).str();
  return den == 1 ? num : num + "/" + den.str();
}

FermatRational make_fermat_rational(const boost::multiprecision::cpp_int& x,
                                    const boost::multiprecision::cpp_int& y,
                                    const boost::multiprecision::cpp_int& z, int n) {
  if (n < 3) throw DomainError("Fermat rational: exponent n must be >= 3");
  if (x < 1 || y < 1 || z < 1) throw DomainError("Fermat rational: x, y, z must be >= 1");
  FermatRational fr;
  fr.x = x;
  fr.y = y;
  fr.z = z;
  fr.n = n;
  const auto un = static_cast<unsigned>(n);
  fr.value = boost::multiprecision::cpp_rational(
      boost::multiprecision::pow(x, un) + boost::multiprecision::pow(y, un),
      boost::multiprecision::pow(z, un));
  return fr;
}

std::array<double, 5> c_coeffs(double sigma, const std::array<double, 5>& a,
                               const LabContext& ctx) {
  ctx.require_sigma(sigma);
  const double z = zeta_2sigma(sigma, ctx);
  std::array<double, 5> c{1.0, 0.0, 0.0, 0.0, 0.0};
  for (int s = 1; s <= 4; ++s) c[s] = ctx.constants.two_pi_sq * std::pow(z, -s) * a[s];
  return c;
}

FunctionalSample functional_F1(double x, double tau, LadderMode mode, const LabContext& ctx) {
  const auto iv = ladder_interval(x, tau, mode, ctx, "functional_F1");
  const auto rec = moment(iv.lower, iv.upper, Integrand::crit2(), ctx);
  auto s = make_sample(tau, x, rec.value / tau);
  s.components["ladder_lower"] = iv.lower;
  s.components["ladder_upper"] = iv.upper;
  s.components["crit2_integral"] = rec.value;
  return s;
}

double crossbreed_lower(double x, double sigma, double tau, const LabContext& ctx) {
  require_positive(x, tau, "crossbreed_functional");
  ctx.require_sigma(sigma);
  const double lower = ctx.constants.two_pi_sq * x * tau / std::pow(zeta_2sigma(sigma, ctx), 4);
  if (lower < ctx.t0) {
    throw DomainError("crossbreed_functional: lower point " + std::to_string(lower) +
                      " is below T0");
  }
  return lower;
}

FunctionalSample crossbreed_functional(double x, double sigma, double tau,
                                       const std::array<double, 5>& a, LadderMode mode,
                                       const LabContext& ctx) {
  const double lower = crossbreed_lower(x, sigma, tau, ctx);
  const double upper = reverse_step(lower, mode, ctx);
  const auto comp = compose(lower, upper, sigma, a, ctx);
  auto s = make_sample(tau, x, comp.F / comp.denominator / tau);
  record(s, comp, lower, upper);
  return s;
}

FunctionalSample basic_formula_check(double T, double sigma, const std::array<double, 5>& a,
                                     LadderMode mode, const LabContext& ctx) {
  ctx.require_sigma(sigma);
  if (!(T >= ctx.t0)) throw DomainError("basic_formula_check: T must be >= T0");
  const double upper = reverse_step(T, mode, ctx);
  const auto comp = compose(T, upper, sigma, a, ctx);
  const double scale = std::pow(zeta_2sigma(sigma, ctx), 4) * T / ctx.constants.two_pi_sq;
  auto s = make_sample(T, 1.0, comp.F / comp.denominator / scale);
  record(s, comp, T, upper);
  s.components["main_term"] = scale;
  return s;
}

LimitFit extrapolate_limit(const std::vector<double>& taus, const std::vector<double>& values) {
  const std::size_t n = taus.size();
  if (n < 3 || values.size() != n) {
    throw DomainError("extrapolate_limit: need at least three (tau, value) points");
  }
  Eigen::MatrixXd X(n, 2);
  Eigen::VectorXd y(n);
  for (std::size_t i = 0; i < n; ++i) {
    X(i, 0) = 1.0;
    X(i, 1) = 1.0 / std::log(taus[i]);
    y(i) = values[i];
  }
  const Eigen::Matrix2d gram = X.transpose() * X;
  const Eigen::Vector2d coef = gram.ldlt().solve(X.transpose() * y);
  const double rss = (X * coef - y).squaredNorm();
  const double var = rss / static_cast<double>(n - 2);
  LimitFit fit;
  fit.limit = coef(0);
  fit.beta = coef(1);
  fit.limit_stderr = std::sqrt(var * gram.inverse()(0, 0));
  fit.separated_from_one = std::abs(fit.limit - 1.0) > 3.0 * fit.limit_stderr;
  return fit;
}

FermatProbe fermat_probe(const FermatRational& fr, double sigma,
                         const std::vector<double>& tau_grid, const std::array<double, 5>& a,
                         LadderMode mode, const LabContext& ctx) {
  if (fr.n < 3) throw DomainError("fermat_probe: exponent n must be >= 3");
  FermatProbe probe;
  probe.rational = fr;
  const double x = fr.to_double();
  // One left-to-right pass for every ∫_0^L |Z|⁴ on the grid.
  MemoryMomentStore memo(ctx.store);
  LabContext local = ctx;
  local.store = &memo;
  std::vector<double> lowers;
  for (double tau : tau_grid) lowers.push_back(crossbreed_lower(x, sigma, tau, ctx));
  prefill_from_zero(Integrand::crit4(), lowers, local);
  std::vector<double> values;
  for (double tau : tau_grid) {
    probe.samples.push_back(crossbreed_functional(x, sigma, tau, a, mode, local));
    values.push_back(probe.samples.back().value);
  }
  probe.fit = extrapolate_limit(tau_grid, values);
  return probe;
}

FunctionalSample divisor_sum_functional(double x, double tau, LadderMode mode,
                                        const LabContext& ctx) {
  const auto iv = ladder_interval(x, tau, mode, ctx, "divisor_sum_functional");
  const auto lo = static_cast<std::int64_t>(std::floor(iv.lower));
  const auto hi = static_cast<std::int64_t>(std::floor(iv.upper));
  const std::uint64_t sum = divisor_sum(lo, hi);
  auto s = make_sample(tau, x, static_cast<double>(sum) / tau);
  s.components["ladder_lower"] = iv.lower;
  s.components["ladder_upper"] = iv.upper;
  s.components["divisor_sum"] = static_cast<double>(sum);
  return s;
}

FunctionalSample tnu_sum_functional(double x, double tau, LadderMode mode, const LabContext& ctx,
                                    GramSummand summand) {
  const auto iv = ladder_interval(x, tau, mode, ctx, "tnu_sum_functional");
  const auto gram = gram_points(iv.lower, iv.upper, ctx.policy);
  long double sum = 0.0L;
  for (std::size_t i = 0; i < gram.points.size(); ++i) {
    const double z = hardy_Z(gram.points[i], ctx.policy);
    const auto nu = gram.first_index + static_cast<std::int64_t>(i);
    sum += summand == GramSummand::zeta_value ? ((nu % 2 == 0) ? z : -z) : z * z;
  }
  auto s = make_sample(tau, x / kPi, static_cast<double>(sum) / tau);
  s.components["ladder_lower"] = iv.lower;
  s.components["ladder_upper"] = iv.upper;
  s.components["gram_points"] = static_cast<double>(gram.points.size());
  s.components["summand_total"] = static_cast<double>(sum);
  return s;
}

FunctionalSample gamma_ratio_functional(double x, double tau, LadderMode mode,
                                        const LabContext& ctx) {
  const auto iv = ladder_interval(x, tau, mode, ctx, "gamma_ratio_functional");
  const double diff = ln_gamma(iv.upper) - ln_gamma(iv.lower);
  auto s = make_sample(tau, x, diff / tau);
  s.components["ladder_lower"] = iv.lower;
  s.components["ladder_upper"] = iv.upper;
  s.components["ln_gamma_difference"] = diff;
  return s;
}

FunctionalSample sigma_moment_functional(double x, double sigma, double tau,
                                         const LabContext& ctx) {
  require_positive(x, tau, "sigma_moment_functional");
  ctx.require_sigma(sigma);
  const double upper = x * tau / zeta_2sigma(sigma, ctx);
  const double value = upper <= 1.0 ? 0.0 : moment(1.0, upper, Integrand::sigma2(sigma), ctx).value;
  auto s = make_sample(tau, x, value / tau);
  s.components["upper"] = upper;
  s.components["sigma_integral"] = value;
  return s;
}

FunctionalSample s1_moment_functional(double x, int l, double tau, const ZeroTable& table,
                                      const LabContext& ctx) {
  require_positive(x, tau, "s1_moment_functional");
  if (l < 1) throw DomainError("s1_moment_functional: l must be >= 1");
  const double cbar = ctx.constants.cbar_for(l);
  const double upper = x * tau / cbar;
  const double value = moment(0.0, upper, Integrand::s1_moment(l), ctx, &table).value;
  auto s = make_sample(tau, x, value / tau);
  s.components["upper"] = upper;
  s.components["cbar"] = cbar;
  s.components["s1_integral"] = value;
  return s;
}

CoeffFit fit_coeffs_from_samples(const std::vector<double>& T, const std::vector<double>& F,
                                 double cond_cap) {
  const std::size_t n = T.size();
  if (n < 4 || F.size() != n) throw DomainError("fit: need at least four (T, F) samples");
  Eigen::MatrixXd X(n, 4);
  Eigen::VectorXd y(n);
  const double a0 = Constants::a0();
  for (std::size_t i = 0; i < n; ++i) {
    const double lg = std::log(T[i]);
    X(i, 0) = lg * lg * lg;
    X(i, 1) = lg * lg;
    X(i, 2) = lg;
    X(i, 3) = 1.0;
    y(i) = F[i] / T[i] - a0 * std::pow(lg, 4);
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(X, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double cond = sv(0) / sv(sv.size() - 1);
  if (!(cond <= cond_cap)) {
    throw IllConditioned("fit: design matrix condition " + std::to_string(cond) +
                         " exceeds cap " + std::to_string(cond_cap));
  }
  const Eigen::VectorXd coef = svd.solve(y);
  CoeffFit fit;
  fit.a_coeffs = {a0, coef(0), coef(1), coef(2), coef(3)};
  fit.condition = cond;
  fit.tau_grid = T;
  fit.moments = F;
  double sq = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lg = std::log(T[i]);
    double model = 0.0;
    for (int s = 0; s <= 4; ++s) model += fit.a_coeffs[s] * std::pow(lg, 4 - s);
    const double data = F[i] / T[i];
    sq += std::pow((model - data) / data, 2);
  }
  fit.residual = std::sqrt(sq / static_cast<double>(n));
  return fit;
}

CoeffFit fit_fourth_moment_coeffs(const std::vector<double>& tau_grid, const LabContext& ctx) {
  if (tau_grid.size() < 8) throw DomainError("fit_fourth_moment_coeffs: need >= 8 grid points");
  for (std::size_t i = 0; i < tau_grid.size(); ++i) {
    if (!(tau_grid[i] >= 500.0 && tau_grid[i] <= 1e4) ||
        (i > 0 && !(tau_grid[i] > tau_grid[i - 1]))) {
      throw DomainError("fit_fourth_moment_coeffs: grid must be ascending within [500, 1e4]");
    }
  }
  MemoryMomentStore memo(ctx.store);
  LabContext local = ctx;
  local.store = &memo;
  prefill_from_zero(Integrand::crit4(), tau_grid, local);
  std::vector<double> F;
  for (double T : tau_grid) F.push_back(moment(0.0, T, Integrand::crit4(), local).value);
  return fit_coeffs_from_samples(tau_grid, F, ctx.cond_cap);
}

double s1_coverage_for(double tau_ref) { return 2.5 * tau_ref; }

double calibrate_cbar(int l, double tau_ref, const ZeroTable& table, LabContext& ctx) {
  if (l < 1) throw DomainError("calibrate_cbar: l must be >= 1");
  if (!(tau_ref > 0.0)) throw DomainError("calibrate_cbar: tau_ref must be > 0");
  QuadratureOptions options;
  options.workers = ctx.workers;
  options.epsilon = ctx.epsilon;
  RunningMoment running(0.0, Integrand::s1_moment(l), ctx.policy, &table, options);
  const auto excess = [&](double v) { return running.value_to(v) - tau_ref; };
  double hi = std::min(tau_ref, table.upper_bound());
  double f_hi = excess(hi);
  while (f_hi < 0.0) {
    if (hi >= table.upper_bound()) {
      throw CoverageError("calibrate_cbar: zero table too short to reach tau_ref = " +
                          std::to_string(tau_ref));
    }
    hi = std::min(1.5 * hi, table.upper_bound());
    f_hi = excess(hi);
  }
  double root = hi;
  if (f_hi > 0.0) {
    std::uintmax_t max_iter = 200;
    const auto tol = [](double a, double b) {
      return std::abs(b - a) <= 1e-13 * std::min(std::abs(a), std::abs(b));
    };
    const auto [a, b] =
        boost::math::tools::toms748_solve(excess, 0.0, hi, -tau_ref, f_hi, tol, max_iter);
    root = 0.5 * (a + b);
  }
  const double cbar = tau_ref / root;
  ctx.constants.cbar[l] = cbar;
  return cbar;
}

}  // namespace zetalab
