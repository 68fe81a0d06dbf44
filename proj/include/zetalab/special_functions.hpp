#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "zetalab/context.hpp"

namespace zetalab {

/// Hardy's Z(t) = e^{iϑ(t)} ζ(1/2+it), real with |Z(t)| = |ζ(1/2+it)|.
///
/// Riemann–Siegel main sum with up to five correction terms once their
/// truncation bound meets `policy.abs_tol`; below that, Euler–Maclaurin for
/// ζ(1/2+it) rotated by ϑ(t).
double hardy_Z(double t, const PrecisionPolicy& policy);

/// ζ(σ+it) for σ >= 1/2 by a truncated Dirichlet series with Euler–Maclaurin
/// tail. On σ = 1/2 with large |t| it goes through hardy_Z instead.
std::complex<double> zeta_on_sigma(double sigma, double t, const PrecisionPolicy& policy);

/// ζ(s) for real s > 1.
double zeta_real(double s, const PrecisionPolicy& policy);

/// Riemann–Siegel theta. Asymptotic series for t >= 10, complex log-Gamma below.
double rs_theta(double t, const PrecisionPolicy& policy);

/// ϑ'(t) (t >= 1).
double rs_theta_prime(double t);

/// ln Γ(x) for x > 0, relative error below 1e-12.
double ln_gamma(double x);

/// Continuous branch of ln Γ(z) for Re z > 0.
std::complex<double> ln_gamma(std::complex<double> z);

/// Number of divisors of n >= 1.
std::uint64_t divisor_d(std::int64_t n);

/// d(n) for n in (lo, hi], by a segmented sieve. Requires 0 <= lo <= hi.
std::vector<std::uint32_t> divisor_counts(std::int64_t lo, std::int64_t hi);

/// Σ_{lo < n <= hi} d(n), exact.
std::uint64_t divisor_sum(std::int64_t lo, std::int64_t hi);

namespace detail {

/// ϑ(t) reduced into [0, 2π), accurate to ~1e-14 absolute for t up to 1e6.
double theta_mod_2pi(double t);

/// Fills out[n] = n^{-σ-it} for n = 1..count (out[0] unused).
void dirichlet_terms(double sigma, double t, std::size_t count,
                     std::vector<std::complex<double>>& out);

}  // namespace detail

}  // namespace zetalab
