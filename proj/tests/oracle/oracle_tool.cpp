// Prints reference values from the independent implementations in oracle.cpp.
// `oracle_tool quick` covers the cheap quantities; `oracle_tool moments`
// integrates |Z|^2 and |Z|^4 over [0, 1000] in binary128; `oracle_tool gram`
// sums ζ over the Gram points of the x = 1, τ = 10^4 ladder interval;
// `oracle_tool crossbreed` recomposes the cross-breed value at x = 1, τ = 10^4.

#include <chrono>
#include <cstdio>
#include <cmath>
#include <complex>
#include <cstring>

#include "oracle.hpp"
#include "zetalab/context.hpp"
#include "zetalab/special_functions.hpp"

namespace o = zetalab::oracle;

namespace {

// Cross-breed value (1/τ) A⁴F / Σ c_s B^{4-s} A^s at σ = 1 in asymptotic mode,
// recomposed from scratch: the ladder step and ζ(2σ) come from the binary128
// routines and every integral from fixed-panel Gauss–Legendre over the point
// kernels Z(t) and ζ(σ+it).
double crossbreed(double x, double tau, const double (&a)[5]) {
  const double c = 0.57721566490153286;
  const double sigma = 1.0;
  const double pi = 3.14159265358979324;
  const double zeta2s = o::zeta(2 * sigma, 0.0).re;
  const double L = 2 * pi * pi * x * tau / std::pow(zeta2s, 4);
  const double U = o::asymptotic_ladder_step(L, c);
  zetalab::PrecisionPolicy policy;
  const auto Z = [&](double t) { return zetalab::hardy_Z(t, policy); };
  const auto zs = [&](double t) { return std::norm(zetalab::zeta_on_sigma(sigma, t, policy)); };
  const double A = o::fixed_gauss_integral(zs, L, U, 0.25);
  const double B = o::fixed_gauss_integral([&](double t) { return Z(t) * Z(t); }, L, U, 0.25);
  const double F = o::fixed_gauss_integral(
      [&](double t) { const double z = Z(t); return z * z * z * z; }, 0.0, L, 0.25);
  // Σ c_s B^{4-s} A^s / A⁴ = Σ c_s (B/A)^{4-s}, with c_0 = 1, c_s = 2π² ζ(2σ)^{-s} a_s.
  long double denom = 0;
  const long double C = static_cast<long double>(B) / A;
  for (int s = 0; s < 5; ++s) {
    const long double cs = s == 0 ? 1.0L : 2 * pi * pi * a[s] / std::pow(zeta2s, s);
    denom += cs * std::pow(C, 4 - s);
  }
  std::printf("L = %.17g\nU = %.17g\nA = %.17g\nB = %.17g\nF = %.17g\n", L, U, A, B, F);
  return static_cast<double>(F / denom / tau);
}

}  // namespace

int main(int argc, char** argv) {
  const char* what = argc > 1 ? argv[1] : "quick";
  const auto start = std::chrono::steady_clock::now();
  if (std::strcmp(what, "quick") == 0) {
    std::printf("Z(0) = %.17g\n", o::hardy_Z(0.0));
    const auto z = o::zeta(0.6, 100.0);
    std::printf("zeta(0.6+100i) = %.17g %+.17g i\n", z.re, z.im);
    const auto z2 = o::zeta(2.0, 0.0);
    std::printf("zeta(2) = %.17g\n", z2.re);
    std::printf("theta(14.134725) = %.17g\n", o::theta(14.134725));
    std::printf("theta(17.8455995) = %.17g\n", o::theta(17.8455995));
    std::printf("lngamma(10) = %.17g\n", o::ln_gamma(10.0));
    std::printf("lngamma(1e4) = %.17g\n", o::ln_gamma(1e4));
    const auto zeros = o::first_zeros(25);
    for (std::size_t i = 0; i < zeros.size(); ++i) std::printf("zero[%zu] = %.15f\n", i + 1, zeros[i]);
    std::printf("S1(50) = %.15g\n", o::S1(50.0));
    std::printf("D(10) = %llu\n", static_cast<unsigned long long>(o::divisor_summatory(10)));
    std::printf("fermat(1,1,1,3) = %s\n", o::fermat_rational(1, 1, 1, 3).c_str());
    std::printf("fermat(3,4,5,3) = %s\n", o::fermat_rational(3, 4, 5, 3).c_str());
    std::printf("ladder_asym(1000) = %.17g\n", o::asymptotic_ladder_step(1000.0, 0.57721566490153286));
  } else if (std::strcmp(what, "moments") == 0) {
    const double upper = argc > 2 ? std::atof(argv[2]) : 1000.0;
    const auto m = o::critical_moments(0.0, upper);
    std::printf("crit2(%g) = %.17g\ncrit4(%g) = %.17g\n", upper, m.crit2, upper, m.crit4);
  } else if (std::strcmp(what, "crossbreed") == 0) {
    const double a[5] = {0.0, -1.3540605676044575, 33.143703432351195, -255.35612417487795,
                         641.04010324665};
    std::printf("crossbreed(x=1, tau=1e4) = %.17g\n", crossbreed(1.0, 1e4, a));
  } else if (std::strcmp(what, "gram") == 0) {
    std::printf("gram_sum(x=1, tau=1e4) = %.17g\n", o::gram_sum(1.0, 1e4, 0.57721566490153286));
  } else {
    std::fprintf(stderr, "usage: oracle_tool quick|moments [upper]|gram|crossbreed\n");
    return 1;
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::fprintf(stderr, "[%.1f s]\n", secs);
  return 0;
}
