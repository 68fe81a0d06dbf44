#include <cmath>
#include <numbers>

#include "doctest.h"
#include "frozen.hpp"
#include "oracle.hpp"
#include "shared.hpp"
#include "zetalab/errors.hpp"
#include "zetalab/functionals.hpp"
#include "zetalab/special_functions.hpp"

using namespace zetalab;
using zetalab::testing::shared_context;
using zetalab::testing::shared_table;

namespace {

std::array<double, 5> fitted_a() {
  return {Constants::a0(), frozen::kFitA[0], frozen::kFitA[1], frozen::kFitA[2], frozen::kFitA[3]};
}

// Context with c̄(1) calibrated at τ_ref = 5000, computed once.
LabContext& calibrated_context() {
  static LabContext ctx = [] {
    LabContext c = shared_context();
    calibrate_cbar(1, 5000.0, shared_table(zetalab::testing::kTableTop), c);
    return c;
  }();
  return ctx;
}

}  // namespace

TEST_SUITE("functionals") {

TEST_CASE("c coefficients") {
  const LabContext& ctx = shared_context();
  for (double sigma : {0.6, 1.0, 2.5}) CHECK(c_coeffs(sigma, fitted_a(), ctx)[0] == doctest::Approx(1.0).epsilon(1e-15));
  const auto zero = c_coeffs(1.0, {Constants::a0(), 0, 0, 0, 0}, ctx);
  for (int s = 1; s < 5; ++s) CHECK(zero[s] == 0.0);
  const auto one = c_coeffs(1.0, {Constants::a0(), 1, 0, 0, 0}, ctx);
  CHECK(std::abs(one[1] - 12.0) < 1e-12);
}

TEST_CASE("basic functional in integral mode returns x") {
  for (double x : {0.5, 1.0, 2.0}) {
    const auto s = functional_F1(x, 3000.0, LadderMode::integral, shared_context());
    CHECK(std::abs(s.value - x) < 1e-8 * x);
  }
}

TEST_CASE("basic functional in asymptotic mode at tau = 1e4") {
  const auto one = functional_F1(1.0, 1e4, LadderMode::asymptotic, shared_context());
  CHECK(std::abs(one.value - 1.0) < 0.25);
  const auto two = functional_F1(2.0, 1e4, LadderMode::asymptotic, shared_context());
  const double ratio = two.components.at("crit2_integral") / one.components.at("crit2_integral");
  CHECK(std::abs(ratio / 2 - 1) < 0.1);
}

TEST_CASE("cross-breed value matches the recomposed reference") {
  const auto s = crossbreed_functional(1.0, 1.0, 1e4, fitted_a(), LadderMode::asymptotic,
                                       shared_context());
  CHECK(std::abs(s.value / frozen::kCrossbreed1e4 - 1) < 1e-6);
}

TEST_CASE("cross-breed value approaches x and scales with it") {
  const LabContext& ctx = shared_context();
  const auto v = [&](double x, double tau) {
    return crossbreed_functional(x, 1.0, tau, fitted_a(), LadderMode::asymptotic, ctx).value;
  };
  const double one_lo = v(1.0, 1e3), one_hi = v(1.0, 1e4);
  CHECK(std::abs(one_hi - 1) < std::abs(one_lo - 1));
  const double one_mid = v(1.0, 3e3);
  const double two_lo = v(2.0, 1e3), two_mid = v(2.0, 3e3);
  CHECK(std::abs(two_mid / one_mid - 2) < std::abs(two_lo / one_lo - 2));
}

TEST_CASE("Fermat rationals are exact") {
  const auto a = make_fermat_rational(1, 1, 1, 3);
  CHECK(a.str() == oracle::fermat_rational(1, 1, 1, 3));
  CHECK(a.to_double() == 2.0);
  const auto b = make_fermat_rational(3, 4, 5, 3);
  CHECK(b.str() == "91/125");
  CHECK(b.str() == oracle::fermat_rational(3, 4, 5, 3));
  CHECK(b.to_double() == 0.728);
  const auto c = make_fermat_rational(123456789, 987654321, 55555, 7);
  CHECK(c.str() == oracle::fermat_rational(123456789, 987654321, 55555, 7));
  CHECK_THROWS_AS(make_fermat_rational(1, 1, 1, 2), DomainError);
  CHECK_THROWS_AS(make_fermat_rational(0, 1, 1, 3), DomainError);
}

TEST_CASE("divisor functional in asymptotic mode at tau = 1e4") {
  const auto s = divisor_sum_functional(1.0, 1e4, LadderMode::asymptotic, shared_context());
  CHECK(std::abs(s.value - 1.0) < 0.3);
}

TEST_CASE("Gram-point sum matches the binary128 reference") {
  const auto s = tnu_sum_functional(1.0, 1e4, LadderMode::asymptotic, shared_context());
  CHECK(std::abs(s.value / frozen::kGramSum1e4 - 1) < 1e-8);
  CHECK(s.x_target == doctest::Approx(1.0 / std::numbers::pi));
}

TEST_CASE("Gram-point sum against the divisor sum") {
  const LabContext& ctx = shared_context();
  const double gram = tnu_sum_functional(1.0, 1e4, LadderMode::asymptotic, ctx).value;
  const double div = divisor_sum_functional(1.0, 1e4, LadderMode::asymptotic, ctx).value;
  const double ratio = std::numbers::pi * gram / div;
  CHECK(ratio > 0.7);
  CHECK(ratio < 1.4);
}

TEST_CASE("Gram summand alternatives have the expected means") {
  const LabContext& ctx = shared_context();
  const auto value = tnu_sum_functional(1.0, 3000.0, LadderMode::integral, ctx, GramSummand::zeta_value);
  const auto abs2 = tnu_sum_functional(1.0, 3000.0, LadderMode::integral, ctx, GramSummand::zeta_abs_squared);
  const double points = value.components.at("gram_points");
  CHECK(points == abs2.components.at("gram_points"));
  CHECK(std::abs(value.components.at("summand_total") / points - 2.0) < 0.1);
  CHECK(abs2.components.at("summand_total") / points > 2.0);
}

TEST_CASE("log-gamma functional at tau = 1e4") {
  const auto s = gamma_ratio_functional(1.0, 1e4, LadderMode::asymptotic, shared_context());
  CHECK(std::abs(s.value - 1.0) < 0.2);
}

TEST_CASE("sigma-line functional") {
  const LabContext& ctx = shared_context();
  const double zeta2 = std::numbers::pi * std::numbers::pi / 6;
  CHECK(sigma_moment_functional(1.0, 1.0, zeta2, ctx).value == 0.0);
  const auto s = sigma_moment_functional(1.0, 1.0, 1e4, ctx);
  CHECK(std::abs(s.value - 1.0) < 0.1);
  double prev = 0.0;
  for (double x : {0.25, 0.5, 1.0}) {
    const double v = sigma_moment_functional(x, 1.0, 3000.0, ctx).value;
    CHECK(v > prev);
    prev = v;
  }
  CHECK_THROWS_AS(sigma_moment_functional(1.0, 0.52, 1e3, ctx), DomainError);
}

TEST_CASE("S1 functional after calibration") {
  const LabContext& ctx = calibrated_context();
  const auto s = s1_moment_functional(1.0, 1, 1e4, shared_table(zetalab::testing::kTableTop), ctx);
  CHECK(std::abs(s.value - 1.0) < 0.3);
}

TEST_CASE("calibration reproduces one at the reference point") {
  const LabContext& ctx = calibrated_context();
  const double cbar = ctx.constants.cbar_for(1);
  CHECK(cbar > 0.0);
  CHECK(std::abs(cbar / 0.747009130603581 - 1) < 1e-9);
  const auto s = s1_moment_functional(1.0, 1, 5000.0, shared_table(zetalab::testing::kTableTop), ctx);
  CHECK(s.value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("c-bar entries are per exponent") {
  LabContext ctx = calibrated_context();
  CHECK_THROWS_AS(ctx.constants.cbar_for(2), MissingConstant);
  const double c1 = ctx.constants.cbar_for(1);
  calibrate_cbar(2, 500.0, shared_table(zetalab::testing::kTableTop), ctx);
  CHECK(ctx.constants.cbar_for(1) == c1);
  CHECK(ctx.constants.cbar_for(2) != c1);
  CHECK_THROWS_AS(s1_moment_functional(1.0, 3, 1e3, shared_table(zetalab::testing::kTableTop), ctx),
                  MissingConstant);
}

TEST_CASE("calibration needs a long enough zero table") {
  LabContext ctx = shared_context();
  const auto short_table = build_zero_table(500.0, ctx.policy);
  CHECK_THROWS_AS(calibrate_cbar(1, 5000.0, short_table, ctx), CoverageError);
}

TEST_CASE("coefficient fit recovers synthetic coefficients") {
  const std::array<double, 5> a{Constants::a0(), 0.3, -2.0, 5.0, 40.0};
  std::vector<double> T, F;
  for (int i = 0; i < 10; ++i) {
    const double t = 500.0 + 1000.0 * i;
    const double L = std::log(t);
    T.push_back(t);
    F.push_back(t * (a[0] * std::pow(L, 4) + a[1] * std::pow(L, 3) + a[2] * L * L + a[3] * L + a[4]));
  }
  const auto fit = fit_coeffs_from_samples(T, F, 1e12);
  CHECK(fit.a_coeffs[0] == Constants::a0());
  for (int s = 1; s < 5; ++s) CHECK(std::abs(fit.a_coeffs[s] - a[s]) < 1e-6 * std::max(1.0, std::abs(a[s])));
  CHECK(fit.residual < 1e-12);
  CHECK_THROWS_AS(fit_coeffs_from_samples(T, F, 10.0), IllConditioned);
}

TEST_CASE("fourth-moment fit improves as the grid extends") {
  const LabContext& ctx = shared_context();
  std::vector<double> short_grid, long_grid;
  for (int i = 0; i < 8; ++i) {
    short_grid.push_back(500.0 + (5000.0 - 500.0) * i / 7);
    long_grid.push_back(500.0 + (1e4 - 500.0) * i / 7);
  }
  const auto a = fit_fourth_moment_coeffs(short_grid, ctx);
  const auto b = fit_fourth_moment_coeffs(long_grid, ctx);
  CHECK(a.a_coeffs[0] == Constants::a0());
  CHECK(b.residual < a.residual);
  for (int s = 0; s < 4; ++s) CHECK(std::abs(b.a_coeffs[s + 1] / frozen::kFitA[s] - 1) < 1e-6);
  CHECK_THROWS_AS(fit_fourth_moment_coeffs({500, 1000, 2000}, ctx), DomainError);
}

TEST_CASE("limit extrapolation on exact data") {
  std::vector<double> taus{1e3, 2e3, 5e3, 1e4, 3e4};
  std::vector<double> values;
  for (double t : taus) values.push_back(1.7 + 0.9 / std::log(t));
  const auto fit = extrapolate_limit(taus, values);
  CHECK(std::abs(fit.limit - 1.7) < 1e-10);
  CHECK(std::abs(fit.beta - 0.9) < 1e-9);
  CHECK(fit.limit_stderr < 1e-9);
  CHECK(fit.separated_from_one);
  CHECK_THROWS(extrapolate_limit({1e3, 1e4}, {1.0, 1.0}));
}

}  // TEST_SUITE
