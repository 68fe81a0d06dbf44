#pragma once

// Independent reference implementations used to pin test values. Nothing here
// calls into the zetalab kernels: ζ and ϑ are evaluated in 113-bit binary128
// arithmetic by Euler–Maclaurin and Stirling with exact Bernoulli numbers,
// divisor sums by the hyperbola method and Fermat rationals with GMP.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace zetalab::oracle {

/// ζ(σ + it) in binary128, returned as two doubles (rounded at the end).
struct Complex {
  double re = 0.0;
  double im = 0.0;
};
Complex zeta(double sigma, double t);

/// Riemann–Siegel ϑ(t) = Im ln Γ(1/4 + it/2) − (t/2) ln π.
double theta(double t);

/// Z(t) = e^{iϑ(t)} ζ(1/2 + it).
double hardy_Z(double t);

/// ln Γ(x) for real x > 0 through Boost at binary128.
double ln_gamma(double x);

/// The first `count` positive ordinates of zeros of Z, by a 0.05 scan and
/// bisection in binary128 down to an interval of 1e-12.
std::vector<double> first_zeros(int count);

/// ∫_0^t S(u) du with S = N − 1 − ϑ/π, by composite Simpson on each stretch
/// between consecutive zeros with steps of at most `h`.
double S1(double t, double h = 1e-3);

/// Σ_{n <= x} d(n) by the Dirichlet hyperbola method.
std::uint64_t divisor_summatory(std::uint64_t x);

/// (x^n + y^n) / z^n in lowest terms as "p/q" (or "p" when q = 1), via GMP.
std::string fermat_rational(unsigned long x, unsigned long y, unsigned long z, unsigned n);

/// ∫_a^b |Z|^2 and ∫_a^b |Z|^4 by composite 20-point Gauss–Legendre in binary128
/// on panels of width at most `panel`.
struct MomentPair {
  double crit2 = 0.0;
  double crit4 = 0.0;
};
MomentPair critical_moments(double a, double b, double panel = 0.5);

/// Root U of Ĵ(U) − Ĵ(L) = (1 − c) L with Ĵ(T) = T ln(T/2π) − T, by bisection
/// in binary128.
double asymptotic_ladder_step(double L, double c);

/// (1/τ) Σ Re ζ(1/2 + i g_ν) over Gram points g_ν in (L, U], with L = xτ/(1 − c)
/// and U its asymptotic ladder step. Gram points solve ϑ(g) = νπ by Newton in
/// binary128 and ζ is summed directly by Euler–Maclaurin.
double gram_sum(double x, double tau, double c);

/// ∫_a^b f by composite 20-point Gauss–Legendre on equal panels of width at
/// most `panel`, with binary128 nodes and accumulation.
double fixed_gauss_integral(const std::function<double(double)>& f, double a, double b,
                            double panel);

}  // namespace zetalab::oracle
