#include "zetalab/zeros.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/special_functions/lambert_w.hpp>
#include <cmath>
#include <numbers>
#include <string>

#include "zetalab/errors.hpp"
#include "zetalab/quadrature.hpp"
#include "zetalab/special_functions.hpp"

namespace zetalab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kZeroTol = 1e-9;
// ϑ has its minimum near t = 6.2898; Gram points are solved to the right of it.
constexpr double kThetaMinimum = 6.289835988;

double zero_spacing(double t) {
  return 2.0 * kPi / std::max(std::log(std::max(t, 1.0) / (2.0 * kPi)), 1.0);
}

double bisect_zero(double a, double za, double b, const PrecisionPolicy& policy) {
  while (b - a > kZeroTol) {
    const double m = 0.5 * (a + b);
    const double zm = hardy_Z(m, policy);
    if (zm == 0.0) return m;
    if ((zm < 0.0) == (za < 0.0)) {
      a = m;
      za = zm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

// Zeros in (a, b] from a scan whose step is `fraction` of the local spacing.
std::vector<double> scan_interval(double a, double b, double fraction,
                                  const PrecisionPolicy& policy) {
  std::vector<double> out;
  double t = a;
  double zt = hardy_Z(t, policy);
  while (t < b) {
    const double next = std::min(b, t + fraction * zero_spacing(t));
    const double zn = hardy_Z(next, policy);
    if (zn == 0.0) {
      out.push_back(next);
    } else if (zt != 0.0 && (zn < 0.0) != (zt < 0.0)) {
      out.push_back(bisect_zero(t, zt, next, policy));
    }
    t = next;
    zt = zn;
  }
  return out;
}

std::size_t count_in(const std::vector<double>& zeros, double a, double b) {
  const auto lo = std::upper_bound(zeros.begin(), zeros.end(), a);
  const auto hi = std::upper_bound(zeros.begin(), zeros.end(), b);
  return static_cast<std::size_t>(hi - lo);
}

void replace_in(std::vector<double>& zeros, double a, double b, const std::vector<double>& fresh) {
  const auto lo = std::upper_bound(zeros.begin(), zeros.end(), a);
  const auto hi = std::upper_bound(zeros.begin(), zeros.end(), b);
  const auto at = zeros.erase(lo, hi);
  zeros.insert(at, fresh.begin(), fresh.end());
}

// ϑ on [a, b] with b - a small and a >= 10: fixed 10-point Gauss-Legendre per unit chunk.
double theta_integral_smooth(double a, double b, const PrecisionPolicy& policy) {
  using GL = boost::math::quadrature::gauss<double, 10>;
  const int chunks = std::max(1, static_cast<int>(std::ceil((b - a) / 2.0)));
  const double h = (b - a) / chunks;
  double total = 0.0;
  for (int c = 0; c < chunks; ++c) {
    const double lo = a + c * h;
    const double hi = (c + 1 == chunks) ? b : lo + h;
    total += GL::integrate([&](double u) { return rs_theta(u, policy); }, lo, hi);
  }
  return total;
}

}  // namespace

ZeroTable::ZeroTable(std::vector<double> zeros, double upper_bound, const PrecisionPolicy& policy)
    : zeros_(std::move(zeros)), upper_bound_(upper_bound), policy_(policy) {
  for (std::size_t i = 0; i < zeros_.size(); ++i) {
    if (!(zeros_[i] > 0.0) || zeros_[i] > upper_bound_ ||
        (i > 0 && !(zeros_[i] > zeros_[i - 1]))) {
      throw DomainError("ZeroTable: zeros must be strictly increasing in (0, upper_bound]");
    }
  }
  s1_nodes_.reserve(zeros_.size());
  long double s1 = 0.0L;
  double prev = 0.0;
  for (std::size_t j = 0; j < zeros_.size(); ++j) {
    // On (prev, zeros_[j]) the count N(t) - 1 equals j - 1.
    const double width = zeros_[j] - prev;
    s1 += static_cast<long double>(static_cast<double>(j) - 1.0) * width;
    s1 -= static_cast<long double>(theta_integral(prev, zeros_[j], policy_)) / kPi;
    s1_nodes_.push_back(static_cast<double>(s1));
    prev = zeros_[j];
  }
}

std::size_t ZeroTable::count_to(double t) const {
  return static_cast<std::size_t>(std::upper_bound(zeros_.begin(), zeros_.end(), t) -
                                  zeros_.begin());
}

double theta_integral(double a, double b, const PrecisionPolicy& policy) {
  if (a < 0.0 || b < a) throw DomainError("theta_integral: need 0 <= a <= b");
  if (a == b) return 0.0;
  constexpr double kSmooth = 10.0;
  double total = 0.0;
  if (a < kSmooth) {
    // Near 0, ϑ(u) behaves like (u/2) ln(u / 2πe), so let the adaptive rule subdivide.
    PrecisionPolicy tight = policy;
    tight.abs_tol = 1e-15;
    tight.rel_tol = 1e-13;
    tight.max_panel_depth = 40;
    const double hi = std::min(b, kSmooth);
    total += integrate_panel([&](double u) { return rs_theta(u, policy); }, a, hi, tight).value;
    a = hi;
  }
  if (a < b) total += theta_integral_smooth(a, b, policy);
  return total;
}

double gram_point(std::int64_t nu, const PrecisionPolicy& policy) {
  if (nu < -1) throw DomainError("gram_point: index must be >= -1");
  const double target = kPi * static_cast<double>(nu);
  // Leading-order inverse of ϑ(t) ≈ (t/2) ln(t/2πe) - π/8.
  const double arg = (8.0 * static_cast<double>(nu) + 1.0) / (8.0 * std::numbers::e);
  double t = 2.0 * kPi * std::exp(1.0 + boost::math::lambert_w0(arg));
  double lo = kThetaMinimum;
  double hi = std::max(2.0 * t, 20.0);
  t = std::clamp(t, lo, hi);
  for (int iter = 0; iter < 200; ++iter) {
    const double f = rs_theta(t, policy) - target;
    if (f < 0.0) {
      lo = t;
    } else {
      hi = t;
    }
    double next = t - f / rs_theta_prime(std::max(t, 1.0));
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - t) < 1e-12 * std::max(1.0, t) || hi - lo < 1e-12 * t) return next;
    t = next;
  }
  throw SolverError("gram_point: no convergence for index " + std::to_string(nu));
}

NuSequence gram_points(double lower, double upper, const PrecisionPolicy& policy) {
  if (!(lower >= 10.0) || upper < lower) {
    throw DomainError("gram_points: need 10 <= lower <= upper");
  }
  NuSequence seq;
  const auto nu_lo = static_cast<std::int64_t>(std::floor(rs_theta(lower, policy) / kPi)) + 1;
  seq.first_index = nu_lo;
  if (upper == lower) return seq;
  const auto nu_hi = static_cast<std::int64_t>(std::floor(rs_theta(upper, policy) / kPi));
  for (std::int64_t nu = std::max<std::int64_t>(nu_lo - 1, -1); nu <= nu_hi + 1; ++nu) {
    const double g = gram_point(nu, policy);
    if (g > lower && g <= upper) {
      if (seq.points.empty()) seq.first_index = nu;
      seq.points.push_back(g);
    }
  }
  return seq;
}

ZeroTable build_zero_table(double T_max, const PrecisionPolicy& policy) {
  if (!(T_max >= 10.0) || !std::isfinite(T_max)) {
    throw DomainError("build_zero_table: T_max must be >= 10");
  }
  policy.validate();
  constexpr double kScanFraction = 0.9 / 4.0;
  std::vector<double> zeros = scan_interval(0.0, T_max, kScanFraction, policy);

  // Between consecutive good Gram points g_a < g_b (with (-1)^ν Z(g_ν) > 0)
  // there are b - a zeros; N(g_ν) = ν + 1 at a good g_ν.
  double prev_point = 0.0;
  std::int64_t prev_count = 0;
  for (std::int64_t nu = 0;; ++nu) {
    const double g = gram_point(nu, policy);
    if (g > T_max) break;
    const double zg = hardy_Z(g, policy);
    const bool good = (nu % 2 == 0) ? zg > 0.0 : zg < 0.0;
    if (!good) continue;
    const auto expected = static_cast<std::size_t>(nu + 1 - prev_count);
    double fraction = kScanFraction;
    for (int pass = 0; pass < 4 && count_in(zeros, prev_point, g) < expected; ++pass) {
      fraction /= 4.0;
      replace_in(zeros, prev_point, g, scan_interval(prev_point, g, fraction, policy));
    }
    prev_point = g;
    prev_count = nu + 1;
  }

  const double estimate = rs_theta(T_max, policy) / kPi + 1.0;
  if (std::abs(static_cast<double>(zeros.size()) - estimate) >= 2.0) {
    throw CoverageError("build_zero_table: found " + std::to_string(zeros.size()) +
                        " zeros up to " + std::to_string(T_max) + ", expected about " +
                        std::to_string(estimate));
  }
  return ZeroTable(std::move(zeros), T_max, policy);
}

double S_of_t(double t, const ZeroTable& table, const PrecisionPolicy& policy) {
  if (t < 0.0) throw DomainError("S_of_t: t must be >= 0");
  if (t > table.upper_bound()) throw CoverageError("S_of_t: t beyond zero-table coverage");
  return static_cast<double>(table.count_to(t)) - 1.0 - rs_theta(t, policy) / kPi;
}

double S1_of_t(double t, const ZeroTable& table, const PrecisionPolicy& policy) {
  if (t < 0.0) throw DomainError("S1_of_t: t must be >= 0");
  if (t > table.upper_bound()) throw CoverageError("S1_of_t: t beyond zero-table coverage");
  const std::size_t k = table.count_to(t);
  if (k == 0) return -t - theta_integral(0.0, t, policy) / kPi;
  const double node = table.zeros()[k - 1];
  return table.s1_at_zero(k - 1) + (static_cast<double>(k) - 1.0) * (t - node) -
         theta_integral(node, t, policy) / kPi;
}

}  // namespace zetalab
