#include "zetalab/special_functions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "zetalab/errors.hpp"

namespace zetalab {

namespace {

#include "rs_coefficients.inc"

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr long double kTwoPiL = 6.283185307179586476925286766559005768L;
constexpr long double kPiL = 3.141592653589793238462643383279502884L;
constexpr double kLnTwoPi = 1.8378770664093454836;

// ζ(k) for integers 2..kZetaIntMax, used by Bernoulli ratios and ln Γ near 1.
constexpr int kZetaIntMax = 130;

struct ZetaIntTable {
  std::array<double, kZetaIntMax + 1> value{};
  ZetaIntTable() {
    value[2] = kPi * kPi / 6.0;
    constexpr int m = 100;
    for (int k = 3; k <= kZetaIntMax; ++k) {
      double sum = 0.0;
      for (int n = m; n >= 1; --n) sum += std::pow(static_cast<double>(n), -k);
      const double md = m;
      sum += std::pow(md, 1.0 - k) / (k - 1) - 0.5 * std::pow(md, -k) +
             k * std::pow(md, -k - 1.0) / 12.0;
      value[k] = sum;
    }
  }
};

const ZetaIntTable& zeta_int() {
  static const ZetaIntTable table;
  return table;
}

// B_{2k}/(2k)! = (-1)^{k+1} 2 ζ(2k) / (2π)^{2k}.
struct BernoulliRatios {
  static constexpr int kMax = kZetaIntMax / 2;
  std::array<double, kMax + 1> value{};
  BernoulliRatios() {
    const auto& z = zeta_int();
    double pow2pi = 1.0;
    for (int k = 1; k <= kMax; ++k) {
      pow2pi *= kTwoPi * kTwoPi;
      value[k] = ((k % 2 == 1) ? 2.0 : -2.0) * z.value[2 * k] / pow2pi;
    }
  }
};

const BernoulliRatios& bernoulli_ratios() {
  static const BernoulliRatios table;
  return table;
}

// Smallest prime factor table backing the multiplicative Dirichlet recurrence.
constexpr std::uint32_t kSieveLimit = 1u << 20;

const std::vector<std::uint32_t>& smallest_prime_factor() {
  static const std::vector<std::uint32_t> spf = [] {
    std::vector<std::uint32_t> f(kSieveLimit, 0);
    for (std::uint32_t i = 2; i < kSieveLimit; ++i) {
      if (f[i] != 0) continue;
      for (std::uint64_t j = i; j < kSieveLimit; j += i) {
        if (f[j] == 0) f[j] = i;
      }
    }
    return f;
  }();
  return spf;
}

cplx direct_power(double sigma, double t, std::size_t n) {
  const long double ln = std::log(static_cast<long double>(n));
  const double phase = static_cast<double>(std::fmod(static_cast<long double>(t) * ln, kTwoPiL));
  const double mag = std::exp(-sigma * static_cast<double>(ln));
  return {mag * std::cos(phase), -mag * std::sin(phase)};
}

double horner(const double* c, std::size_t n, double u) {
  double acc = 0.0;
  for (std::size_t i = n; i-- > 0;) acc = acc * u + c[i];
  return acc;
}

template <std::size_t N>
double rs_correction(const double (&c)[N], double u) {
  return horner(c, N, u);
}

// Gabcke's bounds for the remainder after C_0..C_K, valid for t >= 200.
constexpr std::array<double, 5> kRsBound = {0.127, 0.053, 0.011, 0.031, 0.017};

int rs_order_for(double t, const PrecisionPolicy& policy) {
  if (t < 200.0) return -1;
  const int cap = std::min<int>(4, policy.max_series_terms - 1);
  for (int k = 0; k <= cap; ++k) {
    if (kRsBound[k] * std::pow(t, -(2.0 * k + 3.0) / 4.0) <= 0.5 * policy.abs_tol) return k;
  }
  return -1;
}

double hardy_Z_riemann_siegel(double t, int order) {
  const double a = std::sqrt(t / kTwoPi);
  const auto n_terms = static_cast<std::size_t>(a);
  const double p = a - static_cast<double>(n_terms);
  thread_local std::vector<cplx> terms;
  detail::dirichlet_terms(0.5, t, n_terms, terms);
  cplx sum = 0.0;
  for (std::size_t n = n_terms; n >= 1; --n) sum += terms[n];
  const double th = detail::theta_mod_2pi(t);
  const double main = 2.0 * (std::cos(th) * sum.real() - std::sin(th) * sum.imag());

  const double u = p - 0.5;
  const double c[5] = {rs_correction(kRsC0, u), rs_correction(kRsC1, u), rs_correction(kRsC2, u),
                       rs_correction(kRsC3, u), rs_correction(kRsC4, u)};
  double corr = 0.0;
  double scale = 1.0;
  for (int k = 0; k <= order; ++k) {
    corr += c[k] * scale;
    scale /= a;
  }
  const double sign = (n_terms % 2 == 1) ? 1.0 : -1.0;  // (-1)^{N-1}
  return main + sign * corr / std::sqrt(a);
}

// Euler–Maclaurin for ζ(s), s != 1.
cplx zeta_euler_maclaurin(cplx s, const PrecisionPolicy& policy) {
  const double abs_s = std::abs(s);
  const auto n = static_cast<std::size_t>(std::max(16.0, std::ceil(0.4 * abs_s) + 1.0));
  thread_local std::vector<cplx> terms;
  detail::dirichlet_terms(s.real(), s.imag(), n, terms);

  cplx sum = 0.0;
  for (std::size_t k = n - 1; k >= 1; --k) sum += terms[k];
  const cplx n_pow = terms[n];  // N^{-s}
  const double nd = static_cast<double>(n);
  sum += n_pow * nd / (s - 1.0) + 0.5 * n_pow;

  const auto& bern = bernoulli_ratios();
  cplx poch = s;                 // s (s+1) ... (s+2k-2)
  cplx power = n_pow / nd;       // N^{-s-2k+1}
  const double target = 0.1 * policy.abs_tol;
  const int cap = std::min(policy.max_series_terms, BernoulliRatios::kMax);
  double prev = INFINITY;
  for (int k = 1; k <= cap; ++k) {
    const cplx term = bern.value[k] * poch * power;
    sum += term;
    const double mag = std::abs(term);
    if (mag <= target) return sum;
    if (mag > prev && k > 4) break;
    prev = mag;
    poch *= (s + (2.0 * k - 1.0)) * (s + 2.0 * k);
    power /= nd * nd;
  }
  throw BudgetExceeded("Euler-Maclaurin tail for zeta(" + std::to_string(s.real()) + "+" +
                       std::to_string(s.imag()) + "i) did not reach abs_tol within " +
                       std::to_string(cap) + " terms");
}

double theta_small(double t) {
  const cplx lg = ln_gamma(cplx(0.25, 0.5 * t));
  return lg.imag() - 0.5 * t * std::log(kPi);
}

long double theta_asymptotic(double t, const PrecisionPolicy& policy) {
  const long double tl = t;
  long double value =
      0.5L * tl * std::log(tl / kTwoPiL) - 0.5L * tl - kPiL / 8.0L;
  const auto& z = zeta_int();
  // (1 - 2^{1-2k}) |B_2k| / (4k(2k-1) t^{2k-1}), |B_2k| = 2 (2k)! ζ(2k) / (2π)^{2k}
  long double fact = 2.0L;  // (2k)!
  long double pow2pi = kTwoPiL * kTwoPiL;
  long double tpow = tl;
  const long double target = 1e-3L * policy.abs_tol;
  for (int k = 1; k <= policy.max_series_terms && 2 * k <= kZetaIntMax; ++k) {
    const long double bern = 2.0L * fact * z.value[2 * k] / pow2pi;
    const long double term =
        (1.0L - std::ldexp(1.0L, 1 - 2 * k)) * bern / (4.0L * k * (2.0L * k - 1.0L) * tpow);
    value += term;
    if (term <= target) return value;
    fact *= (2.0L * k + 1.0L) * (2.0L * k + 2.0L);
    pow2pi *= kTwoPiL * kTwoPiL;
    tpow *= tl * tl;
  }
  throw BudgetExceeded("theta asymptotic series did not converge at t = " + std::to_string(t));
}

}  // namespace

namespace detail {

double theta_mod_2pi(double t) {
  if (t < 10.0) {
    double r = std::fmod(theta_small(t), kTwoPi);
    return r < 0.0 ? r + kTwoPi : r;
  }
  static const PrecisionPolicy tight{1e-16, 1e-12, 60, 12};
  long double r = std::fmod(theta_asymptotic(t, tight), kTwoPiL);
  if (r < 0.0L) r += kTwoPiL;
  return static_cast<double>(r);
}

void dirichlet_terms(double sigma, double t, std::size_t count, std::vector<cplx>& out) {
  out.resize(count + 1);
  if (count == 0) return;
  out[1] = 1.0;
  const auto& spf = smallest_prime_factor();
  for (std::size_t n = 2; n <= count; ++n) {
    if (n < kSieveLimit) {
      const std::uint32_t p = spf[n];
      out[n] = (p == n) ? direct_power(sigma, t, n) : out[p] * out[n / p];
    } else {
      out[n] = direct_power(sigma, t, n);
    }
  }
}

}  // namespace detail

double rs_theta(double t, const PrecisionPolicy& policy) {
  if (!(t >= 0.0)) throw DomainError("rs_theta: t must be >= 0");
  if (t < 10.0) return theta_small(t);
  return static_cast<double>(theta_asymptotic(t, policy));
}

double rs_theta_prime(double t) {
  return 0.5 * std::log(t / kTwoPi) - 1.0 / (48.0 * t * t) - 7.0 / (1920.0 * t * t * t * t);
}

double hardy_Z(double t, const PrecisionPolicy& policy) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("hardy_Z: t must be >= 0");
  const int order = rs_order_for(t, policy);
  if (order >= 0) return hardy_Z_riemann_siegel(t, order);
  const cplx z = zeta_euler_maclaurin(cplx(0.5, t), policy);
  const double th = (t < 10.0) ? theta_small(t) : detail::theta_mod_2pi(t);
  return std::cos(th) * z.real() - std::sin(th) * z.imag();
}

cplx zeta_on_sigma(double sigma, double t, const PrecisionPolicy& policy) {
  if (!(sigma >= 0.5) || !std::isfinite(sigma) || !std::isfinite(t)) {
    throw DomainError("zeta_on_sigma: sigma must be >= 1/2");
  }
  if (sigma == 1.0 && t == 0.0) throw DomainError("zeta_on_sigma: pole at s = 1");
  if (sigma == 0.5) {
    const double at = std::abs(t);
    if (rs_order_for(at, policy) >= 0) {
      const double z = hardy_Z(at, policy);
      const double th = detail::theta_mod_2pi(at);
      const cplx value(z * std::cos(th), -z * std::sin(th));
      return t < 0.0 ? std::conj(value) : value;
    }
  }
  return zeta_euler_maclaurin(cplx(sigma, t), policy);
}

double zeta_real(double s, const PrecisionPolicy& policy) {
  if (!(s > 1.0)) throw DomainError("zeta_real: s must exceed 1");
  if (s == 2.0) return kPi * kPi / 6.0;
  return zeta_euler_maclaurin(cplx(s, 0.0), policy).real();
}

double ln_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("ln_gamma: x must be > 0");
  if (x == 1.0 || x == 2.0) return 0.0;
  const auto& z = zeta_int();
  auto near_one = [&](double e) {
    // ln Γ(1+e) = -γ e + Σ_{k>=2} (-1)^k ζ(k) e^k / k
    double sum = -kEulerGamma * e;
    double pw = e;
    for (int k = 2; k <= kZetaIntMax; ++k) {
      pw *= e;
      const double term = z.value[k] * pw / k;
      sum += (k % 2 == 0) ? term : -term;
      if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
  };
  if (std::abs(x - 1.0) < 0.25) return near_one(x - 1.0);
  if (std::abs(x - 2.0) < 0.25) return near_one(x - 2.0) + std::log1p(x - 2.0);

  double shift_log = 0.0;
  double y = x;
  if (y < 15.0) {
    double prod = 1.0;
    while (y < 15.0) {
      prod *= y;
      y += 1.0;
    }
    shift_log = std::log(prod);
  }
  const auto& bern = bernoulli_ratios();
  // Stirling: (y-1/2) ln y - y + ln(2π)/2 + Σ B_2k / (2k(2k-1) y^{2k-1})
  double series = 0.0;
  double ypow = y;
  double fact = 2.0;  // (2k)!
  for (int k = 1; k <= 12; ++k) {
    const double b2k = bern.value[k] * fact;
    const double term = b2k / (2.0 * k * (2.0 * k - 1.0) * ypow);
    series += term;
    if (std::abs(term) < 1e-18 * std::abs(series)) break;
    ypow *= y * y;
    fact *= (2.0 * k + 1.0) * (2.0 * k + 2.0);
  }
  return (y - 0.5) * std::log(y) - y + 0.5 * kLnTwoPi + series - shift_log;
}

cplx ln_gamma(cplx zin) {
  if (!(zin.real() > 0.0)) throw DomainError("complex ln_gamma: Re z must be > 0");
  cplx z = zin;
  cplx shift = 0.0;
  while (z.real() < 15.0 || std::abs(z) < 15.0) {
    shift += std::log(z);
    z += 1.0;
  }
  const auto& bern = bernoulli_ratios();
  cplx series = 0.0;
  cplx zpow = z;
  double fact = 2.0;
  for (int k = 1; k <= 12; ++k) {
    series += bern.value[k] * fact / (2.0 * k * (2.0 * k - 1.0) * zpow);
    zpow *= z * z;
    fact *= (2.0 * k + 1.0) * (2.0 * k + 2.0);
  }
  return (z - 0.5) * std::log(z) - z + 0.5 * kLnTwoPi + series - shift;
}

std::uint64_t divisor_d(std::int64_t n) {
  if (n < 1) throw DomainError("divisor_d: n must be >= 1");
  std::uint64_t count = 1;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    count *= static_cast<std::uint64_t>(e + 1);
  }
  if (n > 1) count *= 2;
  return count;
}

std::vector<std::uint32_t> divisor_counts(std::int64_t lo, std::int64_t hi) {
  if (lo < 0 || hi < lo) throw DomainError("divisor_counts: need 0 <= lo <= hi");
  std::vector<std::uint32_t> d(static_cast<std::size_t>(hi - lo), 0);
  for (std::int64_t i = 1; i * i <= hi; ++i) {
    std::int64_t q = std::max<std::int64_t>(i, (lo + 1 + i - 1) / i);
    for (; i * q <= hi; ++q) {
      d[static_cast<std::size_t>(i * q - lo - 1)] += (q == i) ? 1u : 2u;
    }
  }
  return d;
}

std::uint64_t divisor_sum(std::int64_t lo, std::int64_t hi) {
  std::uint64_t total = 0;
  constexpr std::int64_t kBlock = 1 << 20;
  for (std::int64_t a = lo; a < hi; a += kBlock) {
    const auto counts = divisor_counts(a, std::min(hi, a + kBlock));
    for (auto c : counts) total += c;
  }
  return total;
}

}  // namespace zetalab
