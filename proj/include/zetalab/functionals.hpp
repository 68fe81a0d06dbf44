#pragma once

#include <array>
#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <string>
#include <vector>

#include "zetalab/context.hpp"
#include "zetalab/ladder.hpp"

namespace zetalab {

class ZeroTable;

/// One finite-τ evaluation of a limit functional.
struct FunctionalSample {
  double tau = 0.0;
  double x_target = 0.0;
  double value = 0.0;
  double rel_error_vs_target = 0.0;
  std::map<std::string, double> components;
};

/// (xⁿ + yⁿ) / zⁿ in exact arithmetic.
struct FermatRational {
  boost::multiprecision::cpp_int x, y, z;
  int n = 3;
  boost::multiprecision::cpp_rational value;

  double to_double() const;
  std::string str() const;  // "p/q" in lowest terms, "p" when q = 1
};

/// Requires x, y, z >= 1 and n >= 3.
FermatRational make_fermat_rational(const boost::multiprecision::cpp_int& x,
                                    const boost::multiprecision::cpp_int& y,
                                    const boost::multiprecision::cpp_int& z, int n);

/// Fourth-moment coefficients with a_0 pinned to 1/(2π²).
struct CoeffFit {
  std::array<double, 5> a_coeffs{};
  double residual = 0.0;  // RMS of (model - data) / data over the grid
  double condition = 0.0;
  std::vector<double> tau_grid;
  std::vector<double> moments;  // ∫_0^T |Z|⁴ at each grid point
};

/// c_0 = 1, c_s = 2π² ζ(2σ)^{-s} a_s.
std::array<double, 5> c_coeffs(double sigma, const std::array<double, 5>& a,
                               const LabContext& ctx);

/// (1/τ) ∫_L^{L̂} |Z|² with L = xτ/(1-c) and L̂ its reverse iterate.
FunctionalSample functional_F1(double x, double tau, LadderMode mode, const LabContext& ctx);

/// L = 2π² x τ / ζ⁴(2σ), the lower point of the cross-breed ladder step.
double crossbreed_lower(double x, double sigma, double tau, const LabContext& ctx);

/// (1/τ) A⁴ F / Σ c_s B^{4-s} A^s where, with L = 2π² x τ / ζ⁴(2σ) and U = L̂,
/// A = ∫_L^U |ζ(σ+it)|², B = ∫_L^U |Z|² and F = ∫_0^L |Z|⁴.
FunctionalSample crossbreed_functional(double x, double sigma, double tau,
                                       const std::array<double, 5>& a, LadderMode mode,
                                       const LabContext& ctx);

/// A⁴ F / (Σ c_s B^{4-s} A^s) at base point T, divided by ζ⁴(2σ) T / (2π²).
FunctionalSample basic_formula_check(double T, double sigma, const std::array<double, 5>& a,
                                     LadderMode mode, const LabContext& ctx);

/// value = limit + beta / ln τ fitted over the probe grid.
struct LimitFit {
  double limit = 0.0;
  double beta = 0.0;
  double limit_stderr = 0.0;
  bool separated_from_one = false;  // |limit - 1| > 3 stderr
};

/// Least squares of values against 1/ln τ; needs at least three points.
LimitFit extrapolate_limit(const std::vector<double>& taus, const std::vector<double>& values);

struct FermatProbe {
  FermatRational rational;
  std::vector<FunctionalSample> samples;
  LimitFit fit;
};

FermatProbe fermat_probe(const FermatRational& fr, double sigma,
                         const std::vector<double>& tau_grid, const std::array<double, 5>& a,
                         LadderMode mode, const LabContext& ctx);

/// (1/τ) Σ_{L < n <= L̂} d(n) with L = xτ/(1-c).
FunctionalSample divisor_sum_functional(double x, double tau, LadderMode mode,
                                        const LabContext& ctx);

/// Summand at the Gram points: ζ(1/2 + i g_ν) = (-1)^ν Z(g_ν), which is real,
/// or the alternative reading |ζ(1/2 + i g_ν)|².
enum class GramSummand { zeta_value, zeta_abs_squared };

/// (1/τ) Σ_{L < g_ν <= L̂} summand(g_ν); target x/π.
FunctionalSample tnu_sum_functional(double x, double tau, LadderMode mode, const LabContext& ctx,
                                    GramSummand summand = GramSummand::zeta_value);

/// (1/τ) [ln Γ(L̂) - ln Γ(L)].
FunctionalSample gamma_ratio_functional(double x, double tau, LadderMode mode,
                                        const LabContext& ctx);

/// (1/τ) ∫_1^{xτ/ζ(2σ)} |ζ(σ+it)|².
FunctionalSample sigma_moment_functional(double x, double sigma, double tau,
                                         const LabContext& ctx);

/// (1/τ) ∫_0^{xτ/c̄(l)} |S₁|^{2l}.
FunctionalSample s1_moment_functional(double x, int l, double tau, const ZeroTable& table,
                                      const LabContext& ctx);

/// Fits a_1..a_4 to F(T)/T - a_0 ln⁴T against ln³T, ln²T, ln T, 1.
CoeffFit fit_coeffs_from_samples(const std::vector<double>& T, const std::vector<double>& F,
                                 double cond_cap);

/// Computes ∫_0^T |Z|⁴ on the grid (at least 8 points in [500, 10⁴]) and fits.
CoeffFit fit_fourth_moment_coeffs(const std::vector<double>& tau_grid, const LabContext& ctx);

/// c̄(l) = τ_ref / V where ∫_0^V |S₁|^{2l} = τ_ref, so the S₁ functional is 1
/// at x = 1, τ = τ_ref. Stores the value in ctx.constants.
double calibrate_cbar(int l, double tau_ref, const ZeroTable& table, LabContext& ctx);

/// Upper limit of the S₁ integral needed to calibrate at τ_ref, with margin;
/// used to size the zero table before calibrating.
double s1_coverage_for(double tau_ref);

}  // namespace zetalab
